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


#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace pqc_lens;
namespace t = pqc_lens::testing;

namespace {

CircuitDescriptor idle() { return CircuitBuilder(1).build(); }

CircuitDescriptor h_rz() {
    CircuitBuilder b(1);
    b.h(0).rz(0, b.param("a"));
    return b.build();
}

CircuitDescriptor bell_circuit() {
    CircuitBuilder b(2);
    b.h(0).cx(0, 1);
    return b.build();
}

CircuitDescriptor rx_z() {
    CircuitBuilder b(1);
    b.rx(0, b.param("theta"));
    return b.build(PauliSum().add(1.0, {{0, Pauli::Z}}));
}

CircuitDescriptor product_circuit(std::size_t n) { return rotation_ansatz_with_cx(n, 0); }

// MW from the definition: dense rho_k for each qubit.
double meyer_wallach_oracle(const StateVector &s) {
    const std::size_t n = s.n_qubits();
    const t::Vec psi = t::to_vec(s);
    double mean_purity = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const t::Mat rho = t::partial_trace(psi, n, {k});
        mean_purity += (rho * rho).trace().real() / static_cast<double>(n);
    }
    return 2.0 * (1.0 - mean_purity);
}

}  // namespace

TEST_CASE("expressibility orders idle above H RZ") {
    const auto idle_r = expressibility(idle(), 1000, Divergence::KLD, 75, 1);
    const auto hrz = expressibility(h_rz(), 1000, Divergence::KLD, 75, 1);
    for (double f : idle_r.fidelities) CHECK(f == Catch::Approx(1.0));
    CHECK(idle_r.value > hrz.value);
    CHECK(hrz.value >= 0.0);
    CHECK(idle_r.fidelity_histogram.same_grid(idle_r.haar_histogram));
    CHECK(idle_r.fidelity_histogram.bins() == kDefaultFidelityBins);
    CHECK(hrz.samples == 1000);
    CHECK(expressibility(h_rz(), 200, Divergence::JSD, 75, 4).value ==
          expressibility(h_rz(), 200, Divergence::JSD, 75, 4).value);
    CHECK_THROWS_AS(expressibility(h_rz(), 1, Divergence::KLD), InvalidArgument);
}

TEST_CASE("idle is least expressive among 1-qubit circuits with a rotation after H") {
    auto mean_kld = [](const CircuitDescriptor &c) {
        double v = 0.0;
        for (Seed seed = 0; seed < 5; ++seed) v += expressibility(c, 2000, Divergence::KLD, 75, seed).value / 5.0;
        return v;
    };
    const double idle_kld = mean_kld(idle());
    std::mt19937_64 rng(21);
    const GateKind rotations[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
    for (int trial = 0; trial < 12; ++trial) {
        CircuitBuilder b(1);
        b.h(0);
        const std::size_t depth = 1 + rng() % 3;
        for (std::size_t k = 0; k < depth; ++k)
            b.gate({rotations[rng() % 3], {0}, b.param("a" + std::to_string(k))});
        CHECK(mean_kld(b.build()) < idle_kld);
    }
}

TEST_CASE("H RZ fidelities follow the cos^2 law") {
    const auto r = expressibility(h_rz(), 10000, Divergence::KLD, 75, 9);
    // F = cos^2(d/2) with d uniform over a period: CDF(f) = 1 - (2/pi) arccos(sqrt f)
    const double ks = ks_statistic(r.fidelities, [](double f) {
        return 1.0 - 2.0 / std::numbers::pi * std::acos(std::sqrt(std::clamp(f, 0.0, 1.0)));
    });
    CHECK(ks < 0.02);
}

TEST_CASE("entanglement of simple circuits") {
    CHECK(std::abs(entanglement_capability(bell_circuit(), 10, EntanglementMeasure::MeyerWallach).value() - 1.0) <
          1e-9);
    const auto prod = entanglement_capability(product_circuit(4), 100, EntanglementMeasure::Scott, 3);
    REQUIRE(prod.values.size() == 2);
    for (double q : prod.values) CHECK(std::abs(q) < 1e-9);
    CHECK_THROWS_AS(entanglement_capability(h_rz(), 10, EntanglementMeasure::MeyerWallach), InvalidArgument);
    CHECK_THROWS_AS(entanglement_capability(bell_circuit(), 0, EntanglementMeasure::MeyerWallach), InvalidArgument);
}

TEST_CASE("M_Z entangler values") {
    const auto mw = entanglement_capability(mz_entangler_circuit(), 1000, EntanglementMeasure::MeyerWallach, 0);
    const auto sc = entanglement_capability(mz_entangler_circuit(), 1000, EntanglementMeasure::Scott, 0);
    CHECK(mw.value() == Catch::Approx(0.501).margin(0.03));
    REQUIRE(sc.values.size() == 2);
    CHECK(sc.values[0] == Catch::Approx(0.498).margin(0.03));
    CHECK(sc.values[1] == Catch::Approx(0.387).margin(0.03));
}

TEST_CASE("Meyer-Wallach equals Scott m=1 and the density-matrix definition") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng() % 3;
        const auto c = t::random_circuit(rng, n, 5 + rng() % 20, 1 + rng() % 4);
        const Seed seed = rng();
        const auto mw = entanglement_capability(c, 20, EntanglementMeasure::MeyerWallach, seed);
        const auto sc = entanglement_capability(c, 20, EntanglementMeasure::Scott, seed);
        CHECK(std::abs(mw.value() - sc.values[0]) < 1e-9);
        CHECK(mw.value() >= -1e-12);
        CHECK(mw.value() <= 1.0 + 1e-12);
        for (double q : sc.values) CHECK((q >= -1e-12 && q <= 1.0 + 1e-12));

        const auto s = simulate(c, t::random_angles(rng, c.num_parameters()));
        CHECK(std::abs(meyer_wallach(s) - meyer_wallach_oracle(s)) < 1e-9);
    }
    CHECK(qubit_subsets(4, 2).size() == 6);
    CHECK(qubit_subsets(5, 1).size() == 5);
}

TEST_CASE("entanglement spectrum of Bell and product states") {
    const auto bell = entanglement_spectrum(bell_circuit(), 5);
    REQUIRE(bell.mean_xi.size() == 2);
    CHECK(std::abs(bell.mean_xi[0] - std::log(2.0)) < 1e-9);
    CHECK(std::abs(bell.mean_xi[1] - std::log(2.0)) < 1e-9);
    CHECK(bell.esd > 0.0);
    CHECK(bell.subsystem_qubits == 1);

    const auto prod = entanglement_spectrum(product_circuit(3), 20);
    CHECK(prod.subsystem_qubits == 2);
    REQUIRE(prod.mean_xi.size() == 4);
    CHECK(std::abs(prod.mean_xi[0]) < 1e-9);
    for (std::size_t r = 1; r < 4; ++r) CHECK(prod.mean_xi[r] == 30.0);
    for (std::size_t r = 1; r < 4; ++r) CHECK(prod.mean_log_lambda[r] <= prod.mean_log_lambda[r - 1]);

    CHECK_THROWS_AS(entanglement_spectrum(h_rz(), 5), InvalidArgument);
    SpectrumOptions bad;
    bad.cutoff = 5;
    CHECK_THROWS_AS(entanglement_spectrum(bell_circuit(), 5, bad), InvalidArgument);
}

TEST_CASE("spectra are normalized and ranked") {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 4;
        const auto c = t::random_circuit(rng, n, 25, 3);
        const auto s = simulate(c, t::random_angles(rng, 3));
        const auto lambda = bipartition_eigenvalues(s, (n + 1) / 2);
        double sum = 0.0;
        for (double l : lambda) sum += l;
        CHECK(std::abs(sum - 1.0) < 1e-9);
        const auto r = entanglement_spectrum(c, 10, SpectrumOptions{Divergence::JSD, -30.0, 75, 0, Seed(trial)});
        for (std::size_t k = 1; k < r.mean_log_lambda.size(); ++k)
            CHECK(r.mean_log_lambda[k] <= r.mean_log_lambda[k - 1]);
        for (double x : r.mean_xi) CHECK(x >= 0.0);
        CHECK(r.esd >= 0.0);
        CHECK(r.xi_histogram.same_grid(r.haar_xi_histogram));
    }
}

TEST_CASE("cosine landscape") {
    const auto c = rx_z();
    const std::vector<double> star{std::numbers::pi};
    LandscapeOptions opt;
    opt.points = 21;
    opt.seed = 3;
    const auto grid = loss_landscape(c, star, MetricSpec::expectation(), opt);
    CHECK(std::abs(grid.center_value + 1.0) < 1e-12);
    CHECK(std::abs(grid.at(10, 10) - grid.center_value) < 1e-10);
    const double a = grid.basis.axes[0][0];
    CHECK(std::abs(std::abs(a) - 1.0) < 1e-12);
    CHECK(grid.basis.axes[1][0] == 0.0);
    for (std::size_t i = 0; i < 21; ++i)
        for (std::size_t j = 0; j < 21; ++j)
            CHECK(std::abs(grid.at(i, j) - std::cos(std::numbers::pi + a * grid.coordinates[i])) < 1e-10);

    opt.range = 0.0;
    CHECK_THROWS_AS(loss_landscape(c, star, MetricSpec::expectation(), opt), InvalidArgument);
    opt.range = 1.0;
    opt.basis_mode = BasisMode::PcaOfTrace;
    CHECK_THROWS_AS(loss_landscape(c, star, MetricSpec::expectation(), opt), InvalidArgument);
    CHECK_THROWS_AS(MetricSpec::from_samples([](std::string_view) { return 0.0; }, 0), InvalidArgument);
}

TEST_CASE("random landscape axes are orthonormal") {
    for (std::size_t dim : {2, 5, 30}) {
        const auto axes = random_orthonormal_axes(dim, dim);
        double n0 = 0, n1 = 0, d = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            n0 += axes[0][i] * axes[0][i];
            n1 += axes[1][i] * axes[1][i];
            d += axes[0][i] * axes[1][i];
        }
        CHECK(std::abs(n0 - 1.0) < 1e-10);
        CHECK(std::abs(n1 - 1.0) < 1e-10);
        CHECK(std::abs(d) < 1e-10);
    }
}

TEST_CASE("trained QAOA landscape is centred on a minimum") {
    const Graph tri{3, {{0, 1}, {0, 2}, {1, 2}}};
    const auto c = qaoa_builder(tri, 1);
    OptimizerConfig cfg;
    cfg.steps = 300;
    cfg.seed = 10;
    const auto traces = ensemble_train(c, cfg, 5);
    std::size_t best = 0;
    for (std::size_t r = 1; r < traces.size(); ++r)
        if (traces[r].final_loss() < traces[best].final_loss()) best = r;
    LandscapeOptions opt;
    opt.basis_mode = BasisMode::PcaOfTrace;
    opt.traces = std::span(traces).subspan(best, 1);
    const auto grid = loss_landscape(c, traces[best].thetas.back(), MetricSpec::expectation(), opt);
    const double lowest = *std::min_element(grid.values.begin(), grid.values.end());
    CHECK(grid.center_value <= lowest + 1e-6);
    CHECK(std::abs(grid.center_value - traces[best].final_loss()) < 1e-10);

    // sampled mean cut: centre close to the exact value 3/2 - <C>
    const auto sampled = loss_landscape(c, traces[best].thetas.back(), maxcut_metric(tri, 4096), opt);
    CHECK(std::abs(sampled.center_value - (1.5 - grid.center_value)) < 0.05);
}

TEST_CASE("barren plateau costs") {
    const auto two = identity_learning_ansatz(2);
    const std::vector<double> zero{0.0, 0.0}, pi{std::numbers::pi, std::numbers::pi};
    CHECK(global_identity_cost(simulate(two, zero)) == Catch::Approx(0.0).margin(1e-12));
    CHECK(local_identity_cost(simulate(two, zero)) == Catch::Approx(0.0).margin(1e-12));
    CHECK(global_identity_cost(simulate(two, pi)) == Catch::Approx(1.0));

    const auto four = identity_learning_ansatz(4);
    const auto g = barren_plateau_scan(four, CostKind::Global);
    const auto l = barren_plateau_scan(four, CostKind::Local);
    CHECK(g.loss.size() == 441);
    CHECK(l.mean_abs_gradient() > g.mean_abs_gradient());

    // gradient grid agrees with finite differences of the loss
    const auto f = [&](std::span<const double> th) { return local_identity_cost(simulate(four, th)); };
    const std::vector<double> at{l.coordinates[3], l.coordinates[17]};
    CHECK(std::abs(t::central_difference(f, at)[1] - l.gradient[3 * 21 + 17]) < 1e-6);
    CHECK_THROWS_AS(barren_plateau_scan(rx_z(), CostKind::Global), InvalidArgument);
}

TEST_CASE("training paths") {
    OptimizerConfig cfg;
    cfg.method = OptimizerMethod::GD;
    cfg.learning_rate = 0.4;
    cfg.steps = 30;
    cfg.init = std::vector<double>{0.1};
    const std::vector<TrainingTrace> one{train(rx_z(), cfg)};
    const auto path = training_path(one, PathMode::PCA);
    REQUIRE(path.points.size() == 31);
    const double dir = path.points[1].x > path.points[0].x ? 1.0 : -1.0;
    for (std::size_t i = 1; i < path.points.size(); ++i)
        CHECK(dir * (path.points[i].x - path.points[i - 1].x) >= 0.0);

    const auto tri = qaoa_builder(Graph{3, {{0, 1}, {0, 2}, {1, 2}}}, 1);
    OptimizerConfig q;
    q.steps = 40;
    const auto traces = ensemble_train(tri, q, 5);
    for (auto mode : {PathMode::PCA, PathMode::TSNE}) {
        const auto p = training_path(traces, mode);
        REQUIRE(p.final_losses.size() == 5);
        for (std::size_t r = 0; r < 5; ++r) CHECK(p.final_losses[r] == traces[r].final_loss());
        std::set<std::size_t> restarts;
        for (const auto &pt : p.points) restarts.insert(pt.restart);
        CHECK(restarts.size() == 5);
        CHECK(p.points.size() == 5 * 41);
    }

    const std::vector<TrainingTrace> dup{traces[0], traces[0]};
    const auto d = training_path(dup, PathMode::PCA);
    for (std::size_t i = 0; i < 41; ++i) {
        CHECK(d.points[i].x == d.points[41 + i].x);
        CHECK(d.points[i].y == d.points[41 + i].y);
    }

    LandscapeOptions lo;
    lo.basis_mode = BasisMode::PcaOfTrace;
    lo.traces = traces;
    lo.points = 5;
    const auto grid = loss_landscape(tri, traces[0].thetas.back(), MetricSpec::expectation(), lo);
    const auto over = training_path(traces, PathMode::PCA, grid);
    REQUIRE(over.overlay);
    CHECK(over.overlay->values.size() == 25);
    CHECK_THROWS_AS(training_path(traces, PathMode::TSNE, grid), InvalidArgument);
    CHECK_THROWS_AS(training_path({}, PathMode::PCA), InvalidArgument);
}

TEST_CASE("parameter histograms") {
    OptimizerConfig cfg;
    cfg.method = OptimizerMethod::GD;
    cfg.learning_rate = 0.4;
    cfg.steps = 60;
    std::vector<TrainingTrace> same;
    cfg.init = std::vector<double>{1.0};
    for (int i = 0; i < 3; ++i) same.push_back(train(rx_z(), cfg));
    const auto spikes = parameter_histogram(same, 10);
    for (const auto &row : spikes.table) {
        std::size_t nonzero = 0;
        for (double m : row[0].masses) nonzero += m > 0.0;
        CHECK(nonzero == 1);
    }

    cfg.init = UniformAngles{};
    cfg.steps = 150;
    std::vector<TrainingTrace> ensemble;
    for (Seed s = 0; s < 32; ++s) {
        cfg.seed = s;
        ensemble.push_back(train(rx_z(), cfg));
    }
    const auto h = parameter_histogram(ensemble, 20);
    REQUIRE(h.table.size() == 151);
    for (const auto &row : h.table) {
        double total = 0.0;
        for (double m : row[0].masses) total += m;
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
    // every minimum of cos is an odd multiple of pi; the mode bin holds most of them
    const auto &last = h.table.back()[0];
    const auto mode = std::max_element(last.masses.begin(), last.masses.end()) - last.masses.begin();
    CHECK(last.masses[mode] >= 0.8);
    CHECK(std::abs(0.5 * (last.bin_edges[mode] + last.bin_edges[mode + 1]) - std::numbers::pi) < 0.5);

    CHECK_THROWS_AS(parameter_histogram(std::span(ensemble).first(1), 5), InvalidArgument);
    std::vector<TrainingTrace> ragged{ensemble[0], ensemble[1]};
    ragged[1].thetas.pop_back();
    ragged[1].losses.pop_back();
    CHECK_THROWS_AS(parameter_histogram(ragged, 5), InvalidArgument);
}

TEST_CASE("reachability") {
    OptimizerConfig cfg;
    cfg.steps = 150;
    cfg.learning_rate = 0.1;
    const auto r = reachability(rx_z(), 500, 3, cfg, 1);
    CHECK(r.pqc_min == Catch::Approx(-1.0).margin(1e-3));
    CHECK(r.haar_min >= -1.0);
    // min_Haar >= -1 = min_PQC, so the estimate is a small positive gap
    CHECK(r.f_r >= -1e-3);
    CHECK(r.f_r < 0.05);
    CHECK(std::abs(reachability(rx_z(), 5000, 3, cfg, 1).f_r) < std::abs(r.f_r));
    const auto again = reachability(rx_z(), 500, 3, cfg, 1);
    CHECK(again.f_r == r.f_r);

    const auto fixed = CircuitDescriptor(1, {}, {}, PauliSum().add(1.0, {{0, Pauli::Z}}));
    cfg.steps = 2;
    const auto stuck = reachability(fixed, 2000, 1, cfg, 2);
    CHECK(stuck.pqc_min == 1.0);
    CHECK(stuck.f_r == Catch::Approx(-2.0).margin(0.02));
    CHECK_THROWS_AS(reachability(h_rz(), 10, 1, cfg, 0), InvalidArgument);
}
