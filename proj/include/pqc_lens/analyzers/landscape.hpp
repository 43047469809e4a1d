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

#include <bit>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "pqc_lens/ansatz.hpp"
#include "pqc_lens/analyzers/common.hpp"
#include "pqc_lens/circuit.hpp"
#include "pqc_lens/projection.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/trainer.hpp"

namespace pqc_lens {

/// Scores one measured bitstring (qubit 0 first).
using SampleScorer = std::function<double(std::string_view)>;

/// What a landscape evaluates at each parameter vector: the exact cost
/// expectation, or the mean score of sampled bitstrings.
struct MetricSpec {
    enum class Mode { Expectation, FromSamples };

    Mode mode = Mode::Expectation;
    SampleScorer scorer;
    std::size_t shots = kDefaultShots;

    static MetricSpec expectation() { return {}; }

    static MetricSpec from_samples(SampleScorer scorer, std::size_t shots = kDefaultShots) {
        if (shots < 1) throw InvalidArgument("MetricSpec: FromSamples needs at least one shot");
        if (!scorer) throw InvalidArgument("MetricSpec: FromSamples needs a scorer");
        return {Mode::FromSamples, std::move(scorer), shots};
    }

    double evaluate(const CircuitDescriptor &circuit, std::span<const double> theta, Seed seed) const {
        if (mode == Mode::Expectation) return cost_value(circuit, theta);
        if (shots < 1 || !scorer) throw InvalidArgument("MetricSpec: FromSamples needs a scorer and shots >= 1");
        const auto counts = sample(simulate(circuit, theta), shots, seed);
        double total = 0.0;
        for (const auto &[bits, c] : counts.counts) total += scorer(bits) * static_cast<double>(c);
        return total / static_cast<double>(counts.shots);
    }
};

/// Mean cut size of sampled partitions.
inline MetricSpec maxcut_metric(Graph graph, std::size_t shots = kDefaultShots) {
    return MetricSpec::from_samples(
        [g = std::move(graph)](std::string_view bits) { return static_cast<double>(cut_size(g, bits)); }, shots);
}

/// Values on a points x points grid over [-range, range]^2 in a 2-D slice of
/// parameter space centred on theta*.
struct LandscapeGrid {
    SubspaceBasis basis;             // origin = theta*
    std::vector<double> coordinates;  // grid coordinates along each axis
    std::vector<double> values;       // row-major: values[i * points + j] at (phi0_i, phi1_j)
    double center_value = 0.0;        // metric at theta* itself
    double range = 0.0;

    std::size_t points() const { return coordinates.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * points() + j]; }
};

enum class BasisMode { PcaOfTrace, Random };

struct LandscapeOptions {
    BasisMode basis_mode = BasisMode::Random;
    std::size_t points = 21;
    double range = std::numbers::pi;
    Seed seed = 0;
    std::span<const TrainingTrace> traces;  // required for PcaOfTrace
};

inline std::vector<double> grid_coordinates(std::size_t points, double range) {
    std::vector<double> c(points);
    for (std::size_t i = 0; i < points; ++i)
        c[i] = -range + 2.0 * range * static_cast<double>(i) / static_cast<double>(points - 1);
    if (points % 2 == 1) c[points / 2] = 0.0;
    return c;
}

/// Two orthonormalized Gaussian directions. With a single parameter the
/// second axis is the zero vector (a 1-D slice drawn on a 2-D grid).
inline std::vector<std::vector<double>> random_orthonormal_axes(std::size_t dim, Seed seed) {
    if (dim < 1) throw InvalidArgument("random axes: circuit has no parameters");
    Rng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> axes;
    while (axes.size() < std::min<std::size_t>(2, dim)) {
        std::vector<double> v(dim);
        for (auto &x : v) x = normal(rng);
        for (const auto &a : axes) {
            double d = 0.0;
            for (std::size_t i = 0; i < dim; ++i) d += a[i] * v[i];
            for (std::size_t i = 0; i < dim; ++i) v[i] -= d * a[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (auto &x : v) x /= norm;
        axes.push_back(std::move(v));
    }
    if (axes.size() < 2) axes.emplace_back(dim, 0.0);
    return axes;
}

/// Landscape L(phi0, phi1) = metric(theta* + phi0 * axis0 + phi1 * axis1).
/// Grid node (i, j) samples with seed + i * points + j; the centre value uses
/// seed + points^2.
inline LandscapeGrid loss_landscape(const CircuitDescriptor &circuit, std::span<const double> theta_star,
                                    const MetricSpec &metric, const LandscapeOptions &opt = {}) {
    const std::size_t m = circuit.num_parameters();
    if (theta_star.size() != m) throw InvalidArgument("loss_landscape: theta* has the wrong length");
    if (opt.points < 2) throw InvalidArgument("loss_landscape: need at least 2 grid points per axis");
    if (!(opt.range > 0.0) || !std::isfinite(opt.range)) throw InvalidArgument("loss_landscape: range must be positive");
    if (m < 1) throw InvalidArgument("loss_landscape: circuit has no parameters");

    LandscapeGrid grid;
    grid.range = opt.range;
    grid.basis.origin.assign(theta_star.begin(), theta_star.end());
    if (opt.basis_mode == BasisMode::Random) {
        grid.basis.axes = random_orthonormal_axes(m, opt.seed);
    } else {
        if (opt.traces.empty()) throw InvalidArgument("loss_landscape: PCA basis needs a training trace");
        PointCloud cloud;
        for (const auto &t : opt.traces) cloud.points.insert(cloud.points.end(), t.thetas.begin(), t.thetas.end());
        grid.basis.axes = pca(cloud, std::min<std::size_t>(2, m)).basis.axes;
        if (grid.basis.axes.size() < 2) grid.basis.axes.emplace_back(m, 0.0);
    }

    grid.coordinates = grid_coordinates(opt.points, opt.range);
    const std::size_t p = opt.points;
    grid.values.resize(p * p);
    parallel_for(p * p, [&](std::size_t node) {
        const double coords[2] = {grid.coordinates[node / p], grid.coordinates[node % p]};
        grid.values[node] = metric.evaluate(circuit, grid.basis.point_at(coords), opt.seed + node);
    });
    grid.center_value = metric.evaluate(circuit, theta_star, opt.seed + p * p);
    return grid;
}

enum class CostKind { Global, Local };

/// 1 - p(0...0)
inline double global_identity_cost(const StateVector &s) { return 1.0 - std::norm(s[0]); }

/// 1 - (1/n) sum_j p(qubit j = 0)
inline double local_identity_cost(const StateVector &s) {
    const std::size_t n = s.n_qubits();
    double p0 = 0.0;
    const auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double prob = std::norm(amps[i]);
        p0 += prob * static_cast<double>(n - static_cast<std::size_t>(std::popcount(i)));
    }
    return 1.0 - p0 / static_cast<double>(n);
}

struct BarrenPlateauScan {
    CostKind kind = CostKind::Global;
    std::vector<double> coordinates;  // shared by theta1 (rows) and theta2 (columns)
    std::vector<double> loss;         // row-major
    std::vector<double> gradient;     // dC/dtheta2, row-major

    double mean_abs_gradient() const {
        double s = 0.0;
        for (double g : gradient) s += std::abs(g);
        return s / static_cast<double>(gradient.size());
    }
};

/// Identity-learning cost and its parameter-shift derivative in theta2 over a
/// grid of (theta1, theta2) = (theta[0], theta[1]); remaining parameters stay
/// at `rest` (zeros when empty).
inline BarrenPlateauScan barren_plateau_scan(const CircuitDescriptor &circuit, CostKind kind, std::size_t points = 21,
                                             double range = std::numbers::pi, std::span<const double> rest = {}) {
    const std::size_t m = circuit.num_parameters();
    if (m < 2) throw InvalidArgument("barren_plateau_scan: circuit needs at least two parameters");
    if (points < 2) throw InvalidArgument("barren_plateau_scan: need at least 2 grid points");
    if (!(range > 0.0)) throw InvalidArgument("barren_plateau_scan: range must be positive");
    if (!rest.empty() && rest.size() != m - 2)
        throw InvalidArgument("barren_plateau_scan: expected " + std::to_string(m - 2) + " fixed parameters");
    const StateFunctional f = kind == CostKind::Global ? StateFunctional(global_identity_cost)
                                                       : StateFunctional(local_identity_cost);
    BarrenPlateauScan scan;
    scan.kind = kind;
    scan.coordinates = grid_coordinates(points, range);
    scan.loss.resize(points * points);
    scan.gradient.resize(points * points);
    parallel_for(points * points, [&](std::size_t node) {
        std::vector<double> theta(m, 0.0);
        theta[0] = scan.coordinates[node / points];
        theta[1] = scan.coordinates[node % points];
        for (std::size_t i = 0; i < rest.size(); ++i) theta[i + 2] = rest[i];
        scan.loss[node] = f(simulate(circuit, theta));
        scan.gradient[node] = parameter_shift_gradient(circuit, theta, f)[1];
    });
    return scan;
}

}  // namespace pqc_lens
