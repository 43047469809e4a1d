// Copyright 2026 The pqc-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pqc_lens/analyzers.hpp"
#include "pqc_lens/ansatz.hpp"
#include "pqc_lens/circuit_io.hpp"
#include "pqc_lens/error.hpp"
#include "pqc_lens/report.hpp"
#include "pqc_lens/svg.hpp"

namespace pqc_lens::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kSpecError = 3, kNumerical = 4 };

/// Parsed command line. Optional fields fall back to per-command defaults.
struct Options {
    std::string command;
    std::string circuit;
    std::string out = "pqc-lens-out";
    Seed seed = 0;
    std::optional<std::size_t> samples;
    std::size_t shots = kDefaultShots;
    std::optional<std::string> measure;
    std::size_t bins = kDefaultFidelityBins;
    std::size_t points = 21;
    double range = std::numbers::pi;
    double cutoff = -30.0;
    std::size_t reference_samples = 0;

    std::optional<std::size_t> steps;
    double lr = 0.05;
    std::string optimizer = "adam";
    std::optional<std::size_t> restarts;
    std::string init = "uniform";

    std::vector<double> theta;
    std::optional<std::string> basis;
    std::optional<std::string> metric;
    std::string mode = "pca";
    bool overlay = false;
    double perplexity = 30.0;
    std::size_t members = 10;
    std::size_t haar_samples = 1000;
    std::size_t nodes = 8;
    std::size_t edges = 20;
    std::size_t p = 1;
};

/// Files produced by one command, written together once it has finished.
class Outputs {
   public:
    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

    std::vector<std::string> names() const {
        std::vector<std::string> n;
        for (const auto &f : files_) n.push_back(f.first);
        return n;
    }

    void write(const std::filesystem::path &dir) const {
        std::filesystem::create_directories(dir);
        for (const auto &[name, content] : files_) {
            std::ofstream f(dir / name, std::ios::binary);
            f << content;
            if (!f) throw Error("cannot write " + (dir / name).string());
        }
    }

   private:
    std::vector<std::pair<std::string, std::string>> files_;
};

namespace detail {

using report::Json;
using report::format_double;

inline CircuitDescriptor load_circuit(const std::string &path) {
    if (path.empty()) throw InvalidArgument("--circuit is required");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read circuit spec '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_circuit_spec(text.str());
}

inline const PauliSum &require_cost(const CircuitDescriptor &c) {
    if (!c.cost()) throw ParseError("circuit spec has no cost observable");
    return *c.cost();
}

inline Divergence divergence_from(const std::string &s) {
    if (s == "kld") return Divergence::KLD;
    if (s == "jsd") return Divergence::JSD;
    throw InvalidArgument("--measure must be kld or jsd for this command");
}

inline OptimizerConfig optimizer_config(const Options &o, std::size_t default_steps) {
    OptimizerConfig cfg;
    cfg.method = o.optimizer == "gd" ? OptimizerMethod::GD : OptimizerMethod::Adam;
    cfg.learning_rate = o.lr;
    cfg.steps = o.steps.value_or(default_steps);
    cfg.seed = o.seed;
    if (o.init == "zeros") cfg.init = ZeroAngles{};
    return cfg;
}

inline std::string note(const Options &o) {
    return "pqc-lens " + o.command + " seed=" + std::to_string(o.seed);
}

/// Index of the restart with the lowest final loss (first on ties).
inline std::size_t best_restart(const std::vector<TrainingTrace> &traces) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < traces.size(); ++r)
        if (traces[r].final_loss() < traces[best].final_loss()) best = r;
    return best;
}

/// Scores bitstrings against a cost made only of Z strings.
inline SampleScorer diagonal_scorer(const PauliSum &cost) {
    for (const auto &t : cost.terms())
        for (const auto &[q, p] : t.paulis)
            if (p != Pauli::Z) throw InvalidArgument("--metric samples needs a cost built from Z operators only");
    return [cost](std::string_view bits) {
        double v = 0.0;
        for (const auto &t : cost.terms()) {
            double sign = 1.0;
            for (const auto &[q, p] : t.paulis)
                if (bits[q] == '1') sign = -sign;
            v += t.coeff * sign;
        }
        return v;
    };
}

inline std::string overlay_csv(const Histogram &a, const char *a_name, const Histogram &b, const char *b_name) {
    std::ostringstream out;
    out << "bin_lo,bin_hi," << a_name << ',' << b_name << '\n';
    for (std::size_t k = 0; k < a.bins(); ++k)
        out << format_double(a.bin_edges[k]) << ',' << format_double(a.bin_edges[k + 1]) << ','
            << format_double(a.masses[k]) << ',' << format_double(b.masses[k]) << '\n';
    return out.str();
}

inline svg::Series loss_series(const TrainingTrace &t) {
    svg::Series s{"restart " + std::to_string(t.restart_id), {}, t.losses};
    for (std::size_t i = 0; i < t.losses.size(); ++i) s.x.push_back(static_cast<double>(i));
    return s;
}

inline void add_traces(const Options &o, const std::vector<TrainingTrace> &traces, Json &report, Outputs &files) {
    Json summary = Json::array();
    std::vector<svg::Series> series;
    for (const auto &t : traces) {
        files.add("trace_" + std::to_string(t.restart_id) + ".csv", report::trace_csv(t));
        summary.push_back(report::to_json(t));
        series.push_back(loss_series(t));
    }
    report["traces"] = std::move(summary);
    files.add("loss.svg", svg::line_plot("training loss", series, "step", "loss", note(o)));
}

inline std::vector<svg::Series> path_series(const TrainingPath &path) {
    std::vector<svg::Series> out;
    for (const auto &pt : path.points) {
        if (out.size() <= pt.restart) out.resize(pt.restart + 1);
        out[pt.restart].x.push_back(pt.x);
        out[pt.restart].y.push_back(pt.y);
    }
    for (std::size_t r = 0; r < out.size(); ++r) out[r].label = "restart " + std::to_string(r);
    return out;
}

inline void add_landscape(const Options &o, const LandscapeGrid &grid, const char *value_name, Json &report,
                          Outputs &files, const std::vector<svg::Series> &overlay = {}) {
    report["landscape"] = report::to_json(grid);
    files.add("landscape.csv", report::grid_csv(grid.coordinates, grid.values, value_name));
    files.add(overlay.empty() ? "landscape.svg" : "path.svg",
              svg::heatmap(overlay.empty() ? "loss landscape" : "training paths on loss landscape", grid.coordinates,
                           grid.values, "phi0", "phi1", note(o), overlay));
}

// ---------------------------------------------------------------- commands

inline void expressibility_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    const auto r = expressibility(circuit, o.samples.value_or(1000), divergence_from(o.measure.value_or("kld")),
                                  o.bins, o.seed);
    report.update(report::to_json(r));
    files.add("fidelity_histogram.csv", overlay_csv(r.fidelity_histogram, "pqc", r.haar_histogram, "haar"));
    files.add("expressibility.svg", svg::histogram_overlay("fidelity distribution", r.fidelity_histogram, "PQC",
                                                           r.haar_histogram, "Haar", "fidelity", note(o)));
}

inline void entanglement_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    const std::string m = o.measure.value_or("meyer-wallach");
    EntanglementMeasure measure;
    if (m == "meyer-wallach")
        measure = EntanglementMeasure::MeyerWallach;
    else if (m == "scott")
        measure = EntanglementMeasure::Scott;
    else
        throw InvalidArgument("--measure must be meyer-wallach or scott for entanglement");
    const auto r = entanglement_capability(circuit, o.samples.value_or(1000), measure, o.seed);
    report.update(report::to_json(r));
    std::ostringstream csv;
    csv << "m,value\n";
    svg::Series s{m, {}, r.values};
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        csv << i + 1 << ',' << format_double(r.values[i]) << '\n';
        s.x.push_back(static_cast<double>(i + 1));
    }
    files.add("entanglement.csv", csv.str());
    files.add("entanglement.svg", svg::line_plot("entangling capability", {s}, "block size m", "Q", note(o)));
}

inline void spectrum_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    SpectrumOptions so;
    so.measure = divergence_from(o.measure.value_or("kld"));
    so.cutoff = o.cutoff;
    so.bins = o.bins;
    so.reference_samples = o.reference_samples;
    so.seed = o.seed;
    const auto r = entanglement_spectrum(circuit, o.samples.value_or(100), so);
    report.update(report::to_json(r));

    std::ostringstream csv;
    csv << "rank,mean_xi,mean_log_lambda,haar_mean_xi\n";
    svg::Series pqc{"PQC", {}, r.mean_log_lambda}, haar{"Haar", {}, {}, true};
    for (std::size_t k = 0; k < r.mean_xi.size(); ++k) {
        csv << k << ',' << format_double(r.mean_xi[k]) << ',' << format_double(r.mean_log_lambda[k]) << ','
            << format_double(r.haar_mean_xi[k]) << '\n';
        pqc.x.push_back(static_cast<double>(k));
        haar.x.push_back(static_cast<double>(k));
        haar.y.push_back(-r.haar_mean_xi[k]);
    }
    files.add("spectrum.csv", csv.str());
    files.add("xi_histogram.csv", overlay_csv(r.xi_histogram, "pqc", r.haar_xi_histogram, "haar"));
    files.add("spectrum.svg", svg::line_plot("entanglement spectrum", {pqc, haar}, "rank", "mean ln lambda", note(o)));
    files.add("xi_histogram.svg", svg::histogram_overlay("entanglement energies", r.xi_histogram, "PQC",
                                                         r.haar_xi_histogram, "Haar", "xi", note(o)));
}

inline void train_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    require_cost(circuit);
    const auto traces = ensemble_train(circuit, optimizer_config(o, 100), o.restarts.value_or(1));
    const std::size_t best = best_restart(traces);
    report["best_restart"] = best;
    report["best_loss"] = traces[best].final_loss();
    add_traces(o, traces, report, files);
}

inline MetricSpec metric_for(const Options &o, const CircuitDescriptor &circuit, const std::string &fallback) {
    const std::string m = o.metric.value_or(fallback);
    if (m == "expectation") return MetricSpec::expectation();
    if (m == "samples") return MetricSpec::from_samples(diagonal_scorer(require_cost(circuit)), o.shots);
    throw InvalidArgument("--metric must be expectation or samples");
}

inline BasisMode basis_from(const std::optional<std::string> &b, BasisMode fallback) {
    if (!b) return fallback;
    if (*b == "random") return BasisMode::Random;
    if (*b == "pca") return BasisMode::PcaOfTrace;
    throw InvalidArgument("--basis must be random or pca");
}

inline void landscape_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    require_cost(circuit);
    const auto metric = metric_for(o, circuit, "expectation");
    LandscapeOptions lo;
    lo.basis_mode = basis_from(o.basis, BasisMode::Random);
    lo.points = o.points;
    lo.range = o.range;
    lo.seed = o.seed;
    std::vector<double> center = o.theta;
    std::vector<TrainingTrace> traces;
    if (center.empty()) {
        traces = ensemble_train(circuit, optimizer_config(o, 100), o.restarts.value_or(1));
        center = traces[best_restart(traces)].thetas.back();
        lo.traces = traces;
        add_traces(o, traces, report, files);
    } else if (lo.basis_mode == BasisMode::PcaOfTrace) {
        throw InvalidArgument("--basis pca needs a training run; drop --theta");
    }
    report["metric"] = metric.mode == MetricSpec::Mode::Expectation ? "expectation" : "samples";
    report["theta_star"] = center;
    add_landscape(o, loss_landscape(circuit, center, metric, lo), "value", report, files);
}

inline PathMode path_mode(const std::string &m) {
    if (m == "pca") return PathMode::PCA;
    if (m == "tsne") return PathMode::TSNE;
    throw InvalidArgument("--mode must be pca or tsne");
}

/// Trains, projects the pooled trajectory and, with an overlay, evaluates the
/// metric on the PCA plane of the trajectory around the best final point.
inline void path_common(const Options &o, const CircuitDescriptor &circuit, const MetricSpec &metric, bool overlay,
                        std::size_t default_restarts, Json &report, Outputs &files) {
    const PathMode mode = path_mode(o.mode);
    if (mode == PathMode::TSNE && overlay) throw InvalidArgument("--overlay needs --mode pca");
    const auto traces = ensemble_train(circuit, optimizer_config(o, 100), o.restarts.value_or(default_restarts));
    add_traces(o, traces, report, files);
    const std::size_t best = best_restart(traces);
    report["best_restart"] = best;

    std::optional<LandscapeGrid> grid;
    if (overlay) {
        LandscapeOptions lo;
        lo.basis_mode = basis_from(o.basis, BasisMode::PcaOfTrace);
        lo.points = o.points;
        lo.range = o.range;
        lo.seed = o.seed;
        lo.traces = traces;
        report["metric"] = metric.mode == MetricSpec::Mode::Expectation ? "expectation" : "samples";
        grid = loss_landscape(circuit, traces[best].thetas.back(), metric, lo);
    }
    TsneOptions to;
    to.perplexity = o.perplexity;
    to.seed = o.seed;
    const auto path = training_path(traces, mode, grid, to);
    report["path"] = {{"mode", o.mode}, {"points", path.points.size()}, {"final_losses", path.final_losses}};
    files.add("path.csv", report::path_csv(path));
    if (grid)
        add_landscape(o, *grid, "value", report, files, path_series(path));
    else
        files.add("path.svg", svg::scatter_paths("training paths (" + o.mode + ")", path_series(path), "x", "y",
                                                 note(o)));
}

inline void path_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    require_cost(circuit);
    path_common(o, circuit, o.overlay ? metric_for(o, circuit, "expectation") : MetricSpec::expectation(), o.overlay,
                5, report, files);
}

inline void histogram_cmd(const Options &o, Json &report, Outputs &files) {
    const auto circuit = load_circuit(o.circuit);
    require_cost(circuit);
    const auto traces = ensemble_train(circuit, optimizer_config(o, 100), o.members);
    add_traces(o, traces, report, files);
    const auto h = parameter_histogram(traces, o.bins);
    report["members"] = o.members;
    report["range_lo"] = h.range_lo;
    report["range_hi"] = h.range_hi;
    files.add("parameter_histogram.csv", report::parameter_histogram_csv(h));
    files.add("parameter_histogram.svg",
              svg::histogram_overlay("parameter 0 across the ensemble", h.table.back()[0], "final step",
                                     h.table.front()[0], "step 0", "theta_0", note(o)));
}

inline void reachability_cmd(const Options &o, Json &report, Outputs &) {
    const auto circuit = load_circuit(o.circuit);
    require_cost(circuit);
    report.update(report::to_json(
        reachability(circuit, o.haar_samples, o.restarts.value_or(5), optimizer_config(o, 100), o.seed)));
}

inline void qaoa_cmd(const Options &o, Json &report, Outputs &files) {
    const Graph graph = gnm_random_graph(o.nodes, o.edges, o.seed);
    const auto circuit = qaoa_builder(graph, o.p);
    Json edges = Json::array();
    for (const auto &[u, v] : graph.edges) edges.push_back({u, v});
    report["graph"] = {{"nodes", graph.n_nodes}, {"edges", std::move(edges)}};
    report["p"] = o.p;
    if (graph.n_nodes <= 20) report["max_cut"] = max_cut_brute_force(graph);

    const std::string m = o.metric.value_or("samples");
    if (m != "samples" && m != "expectation") throw InvalidArgument("--metric must be expectation or samples");
    const auto metric = m == "samples" ? maxcut_metric(graph, o.shots) : MetricSpec::expectation();
    report["metric"] = m;
    path_common(o, circuit, metric, path_mode(o.mode) == PathMode::PCA, 5, report, files);

    // Sampled cut quality of every restart's final parameters.
    const auto cut = maxcut_metric(graph, o.shots);
    double best_cut = 0.0;
    for (auto &t : report["traces"]) {
        const std::size_t r = t["restart_id"];
        const std::vector<double> theta = t["final_theta"];
        const double c = cut.evaluate(circuit, theta, o.seed + 7919 * (r + 1));
        t["mean_cut"] = c;
        best_cut = std::max(best_cut, c);
    }
    report["best_mean_cut"] = best_cut;
}

inline void add_common(CLI::App &sub, Options &o) {
    sub.add_option("--seed", o.seed, "base random seed");
    sub.add_option("--out", o.out, "output directory");
}

inline void add_circuit(CLI::App &sub, Options &o) { sub.add_option("--circuit", o.circuit, "circuit spec (JSON)")->required(); }

inline void add_training(CLI::App &sub, Options &o) {
    sub.add_option("--steps", o.steps, "optimizer steps");
    sub.add_option("--lr", o.lr, "learning rate");
    sub.add_option("--optimizer", o.optimizer, "gd or adam")->check(CLI::IsMember({"gd", "adam"}));
    sub.add_option("--init", o.init, "initial parameters: uniform or zeros")->check(CLI::IsMember({"uniform", "zeros"}));
}

inline void add_grid(CLI::App &sub, Options &o) {
    sub.add_option("--points", o.points, "grid points per axis");
    sub.add_option("--range", o.range, "grid half-width");
    sub.add_option("--metric", o.metric, "expectation or samples");
    sub.add_option("--shots", o.shots, "shots per sampled evaluation");
    sub.add_option("--basis", o.basis, "random or pca");
}

}  // namespace detail

/// Runs one command; args exclude the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"pqc-lens: analyzers for parameterized quantum circuits", "pqc-lens"};
    app.require_subcommand(1, 1);
    using namespace detail;

    auto *expr = app.add_subcommand("expressibility", "fidelity-distribution divergence from Haar");
    add_common(*expr, o), add_circuit(*expr, o);
    expr->add_option("--samples", o.samples, "fidelity pairs");
    expr->add_option("--measure", o.measure, "kld or jsd");
    expr->add_option("--bins", o.bins, "histogram bins");

    auto *ent = app.add_subcommand("entanglement", "Meyer-Wallach or Scott entangling capability");
    add_common(*ent, o), add_circuit(*ent, o);
    ent->add_option("--samples", o.samples, "parameter samples");
    ent->add_option("--measure", o.measure, "meyer-wallach or scott");

    auto *spec = app.add_subcommand("spectrum", "entanglement spectrum divergence from Haar");
    add_common(*spec, o), add_circuit(*spec, o);
    spec->add_option("--samples", o.samples, "parameter samples");
    spec->add_option("--measure", o.measure, "kld or jsd");
    spec->add_option("--bins", o.bins, "histogram bins");
    spec->add_option("--cutoff", o.cutoff, "ln(lambda) cutoff (negative)");
    spec->add_option("--reference-samples", o.reference_samples, "Haar reference samples (0: same as --samples)");

    auto *trn = app.add_subcommand("train", "minimize the circuit cost");
    add_common(*trn, o), add_circuit(*trn, o), add_training(*trn, o);
    trn->add_option("--restarts", o.restarts, "independent restarts");

    auto *land = app.add_subcommand("landscape", "2-D loss landscape around a parameter vector");
    add_common(*land, o), add_circuit(*land, o), add_training(*land, o), add_grid(*land, o);
    land->add_option("--theta", o.theta, "centre parameters (comma separated); trains when absent")->delimiter(',');
    land->add_option("--restarts", o.restarts, "restarts when training");

    auto *path = app.add_subcommand("path", "2-D projection of training trajectories");
    add_common(*path, o), add_circuit(*path, o), add_training(*path, o), add_grid(*path, o);
    path->add_option("--restarts", o.restarts, "independent restarts");
    path->add_option("--mode", o.mode, "pca or tsne");
    path->add_flag("--overlay", o.overlay, "draw the paths on the loss landscape of their PCA plane");
    path->add_option("--perplexity", o.perplexity, "t-SNE perplexity");

    auto *hist = app.add_subcommand("histogram", "parameter histograms across a training ensemble");
    add_common(*hist, o), add_circuit(*hist, o), add_training(*hist, o);
    hist->add_option("--members", o.members, "ensemble size");
    hist->add_option("--bins", o.bins, "histogram bins");

    auto *reach = app.add_subcommand("reachability", "Haar minimum versus trained minimum of the cost");
    add_common(*reach, o), add_circuit(*reach, o), add_training(*reach, o);
    reach->add_option("--haar-samples", o.haar_samples, "Haar states");
    reach->add_option("--restarts", o.restarts, "training restarts");

    auto *qaoa = app.add_subcommand("qaoa", "MaxCut QAOA on a random graph");
    add_common(*qaoa, o), add_training(*qaoa, o), add_grid(*qaoa, o);
    qaoa->add_option("--nodes", o.nodes, "graph nodes");
    qaoa->add_option("--edges", o.edges, "graph edges");
    qaoa->add_option("--p", o.p, "QAOA layers");
    qaoa->add_option("--restarts", o.restarts, "independent restarts");
    qaoa->add_option("--mode", o.mode, "pca or tsne");
    qaoa->add_option("--perplexity", o.perplexity, "t-SNE perplexity");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        Json report;
        report["schema"] = report::kSchemaVersion;
        report["command"] = o.command;
        report["seed"] = o.seed;
        if (!o.circuit.empty()) report["circuit"] = o.circuit;
        Outputs files;
        if (o.command == "expressibility") expressibility_cmd(o, report, files);
        else if (o.command == "entanglement") entanglement_cmd(o, report, files);
        else if (o.command == "spectrum") spectrum_cmd(o, report, files);
        else if (o.command == "train") train_cmd(o, report, files);
        else if (o.command == "landscape") landscape_cmd(o, report, files);
        else if (o.command == "path") path_cmd(o, report, files);
        else if (o.command == "histogram") histogram_cmd(o, report, files);
        else if (o.command == "reachability") reachability_cmd(o, report, files);
        else qaoa_cmd(o, report, files);

        auto artifacts = files.names();
        artifacts.insert(artifacts.begin(), "report.json");
        report["artifacts"] = artifacts;
        files.add("report.json", report.dump(2) + "\n");
        files.write(o.out);
        out << "wrote " << artifacts.size() << " files to " << o.out << '\n';
        return kOk;
    } catch (const ParseError &e) {
        err << "pqc-lens: spec error: " << e.what() << '\n';
        return kSpecError;
    } catch (const NumericalError &e) {
        err << "pqc-lens: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const InvalidArgument &e) {
        err << "pqc-lens: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "pqc-lens: " << e.what() << '\n';
        return kFailure;
    }
}

inline int run(int argc, char **argv) {
    return run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

}  // namespace pqc_lens::cli
