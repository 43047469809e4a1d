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

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "pqc_lens/analyzers.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/stats.hpp"
#include "pqc_lens/trainer.hpp"

namespace pqc_lens::report {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "pqc-lens/1";

/// Round-trippable, locale-independent decimal text.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Json to_json(const Histogram &h) {
    return {{"edges", h.bin_edges}, {"masses", h.masses}, {"total_samples", h.total_samples}};
}

inline Json to_json(const ShotCounts &c) {
    Json counts = Json::object();
    for (const auto &[bits, n] : c.counts) counts[bits] = n;
    return {{"counts", std::move(counts)}, {"shots", c.shots}};
}

inline Json to_json(const ExpressibilityReport &r) {
    return {{"measure", std::string(to_string(r.measure))},
            {"value", r.value},
            {"samples", r.samples},
            {"fidelity_histogram", to_json(r.fidelity_histogram)},
            {"haar_histogram", to_json(r.haar_histogram)}};
}

inline Json to_json(const EntanglementReport &r) {
    Json j = {{"measure", std::string(to_string(r.measure))}};
    if (r.measure == EntanglementMeasure::MeyerWallach)
        j["value"] = r.value();
    else
        j["value"] = r.values;
    j["values"] = r.values;
    j["samples"] = r.samples;
    return j;
}

inline Json to_json(const SpectrumReport &r) {
    return {{"measure", std::string(to_string(r.measure))},
            {"esd", r.esd},
            {"samples", r.samples},
            {"subsystem_qubits", r.subsystem_qubits},
            {"cutoff", r.cutoff},
            {"mean_xi", r.mean_xi},
            {"mean_log_lambda", r.mean_log_lambda},
            {"haar_mean_xi", r.haar_mean_xi},
            {"xi_histogram", to_json(r.xi_histogram)},
            {"haar_xi_histogram", to_json(r.haar_xi_histogram)}};
}

inline Json to_json(const SubspaceBasis &b) { return {{"origin", b.origin}, {"axes", b.axes}}; }

inline Json to_json(const LandscapeGrid &g) {
    return {{"basis", to_json(g.basis)},
            {"points", g.points()},
            {"range", g.range},
            {"center_value", g.center_value}};
}

inline Json to_json(const ReachabilityReport &r) {
    return {{"f_r", r.f_r},
            {"haar_min", r.haar_min},
            {"pqc_min", r.pqc_min},
            {"haar_samples", r.haar_samples},
            {"restarts", r.restarts}};
}

inline Json to_json(const TrainingTrace &t) {
    return {{"restart_id", t.restart_id},
            {"steps", t.steps()},
            {"initial_loss", t.losses.front()},
            {"final_loss", t.final_loss()},
            {"final_theta", t.thetas.back()}};
}

/// columns: step, loss, theta_0 ... theta_{M-1}
inline std::string trace_csv(const TrainingTrace &t) {
    std::ostringstream out;
    out << "step,loss";
    const std::size_t m = t.thetas.empty() ? 0 : t.thetas.front().size();
    for (std::size_t i = 0; i < m; ++i) out << ",theta_" << i;
    out << '\n';
    for (std::size_t s = 0; s < t.losses.size(); ++s) {
        out << s << ',' << format_double(t.losses[s]);
        for (double v : t.thetas[s]) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

/// Long format: phi0, phi1, value
inline std::string grid_csv(const std::vector<double> &coords, const std::vector<double> &values,
                            const char *value_name = "value") {
    std::ostringstream out;
    out << "phi0,phi1," << value_name << '\n';
    const std::size_t p = coords.size();
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            out << format_double(coords[i]) << ',' << format_double(coords[j]) << ','
                << format_double(values[i * p + j]) << '\n';
    return out.str();
}

/// columns: x, y, restart_id, step, loss
inline std::string path_csv(const TrainingPath &path) {
    std::ostringstream out;
    out << "x,y,restart_id,step,loss\n";
    for (const auto &p : path.points)
        out << format_double(p.x) << ',' << format_double(p.y) << ',' << p.restart << ',' << p.step << ','
            << format_double(p.loss) << '\n';
    return out.str();
}

/// columns: bin_lo, bin_hi, mass
inline std::string histogram_csv(const Histogram &h) {
    std::ostringstream out;
    out << "bin_lo,bin_hi,mass\n";
    for (std::size_t k = 0; k < h.bins(); ++k)
        out << format_double(h.bin_edges[k]) << ',' << format_double(h.bin_edges[k + 1]) << ','
            << format_double(h.masses[k]) << '\n';
    return out.str();
}

/// columns: step, parameter, bin_lo, bin_hi, mass
inline std::string parameter_histogram_csv(const ParameterHistograms &h) {
    std::ostringstream out;
    out << "step,parameter,bin_lo,bin_hi,mass\n";
    for (std::size_t s = 0; s < h.table.size(); ++s)
        for (std::size_t i = 0; i < h.table[s].size(); ++i) {
            const auto &hist = h.table[s][i];
            for (std::size_t k = 0; k < hist.bins(); ++k)
                out << s << ',' << i << ',' << format_double(hist.bin_edges[k]) << ','
                    << format_double(hist.bin_edges[k + 1]) << ',' << format_double(hist.masses[k]) << '\n';
        }
    return out.str();
}

}  // namespace pqc_lens::report
