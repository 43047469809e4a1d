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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"
#include "pqc_lens/simulator.hpp"

namespace pqc_lens {

/// Normalized histogram on an explicit bin grid.
struct Histogram {
    std::vector<double> bin_edges;  // B + 1 strictly increasing values
    std::vector<double> masses;     // B values summing to 1
    std::size_t total_samples = 0;  // 0 for analytic (closed-form) histograms

    std::size_t bins() const { return masses.size(); }
    bool same_grid(const Histogram &other) const { return bin_edges == other.bin_edges; }
};

inline std::vector<double> uniform_edges(std::size_t bins, double lo, double hi) {
    std::vector<double> edges(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k)
        edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
    edges.back() = hi;
    return edges;
}

/// Equal-width histogram over [lo, hi]. Bins are half-open [e_k, e_k+1) except
/// the last, which is closed; samples outside the range land in the boundary bins.
inline Histogram histogram(std::span<const double> samples, std::size_t bins, double lo, double hi) {
    if (bins < 1) throw InvalidArgument("histogram: need at least one bin");
    if (!(hi > lo)) throw InvalidArgument("histogram: range must satisfy hi > lo");
    if (samples.empty()) throw InvalidArgument("histogram: no samples");
    Histogram h{uniform_edges(bins, lo, hi), std::vector<double>(bins, 0.0), samples.size()};
    const double scale = static_cast<double>(bins) / (hi - lo);
    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples) {
        if (std::isnan(x)) throw InvalidArgument("histogram: NaN sample");
        double pos = std::floor((x - lo) * scale);
        pos = std::clamp(pos, 0.0, static_cast<double>(bins - 1));
        ++counts[static_cast<std::size_t>(pos)];
    }
    for (std::size_t k = 0; k < bins; ++k)
        h.masses[k] = static_cast<double>(counts[k]) / static_cast<double>(samples.size());
    return h;
}

/// Kolmogorov-Smirnov statistic sup |F_empirical - F| of samples against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf) {
    if (samples.empty()) throw InvalidArgument("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// P(fidelity <= F) for pairs of Haar-random pure states in dimension N.
inline double haar_fidelity_cdf(double fidelity, std::size_t dim) {
    if (dim < 2) throw InvalidArgument("haar_fidelity_cdf: dimension must be at least 2");
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw InvalidArgument("haar_fidelity_cdf: F must lie in [0, 1]");
    return 1.0 - std::pow(1.0 - fidelity, static_cast<double>(dim - 1));
}

/// Density (N-1)(1-F)^(N-2).
inline double haar_fidelity_pdf(double fidelity, std::size_t dim) {
    if (dim < 2) throw InvalidArgument("haar_fidelity_pdf: dimension must be at least 2");
    return static_cast<double>(dim - 1) * std::pow(1.0 - fidelity, static_cast<double>(dim - 2));
}

/// Haar fidelity law integrated exactly over each bin of an equal-width grid on [0, 1].
inline Histogram haar_fidelity_histogram(std::size_t dim, std::size_t bins) {
    if (bins < 1) throw InvalidArgument("haar_fidelity_histogram: need at least one bin");
    Histogram h{uniform_edges(bins, 0.0, 1.0), std::vector<double>(bins), 0};
    for (std::size_t k = 0; k < bins; ++k)
        h.masses[k] = haar_fidelity_cdf(h.bin_edges[k + 1], dim) - haar_fidelity_cdf(h.bin_edges[k], dim);
    return h;
}

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes, normalized.
inline StateVector sample_haar_state(std::size_t n_qubits, Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << n_qubits);
    double norm2 = 0.0;
    for (auto &a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = Complex(re, im);
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amps) a *= inv;
    return StateVector(n_qubits, std::move(amps));
}

inline StateVector sample_haar_state(std::size_t n_qubits, Seed seed) {
    Rng rng(seed);
    return sample_haar_state(n_qubits, rng);
}

inline constexpr double kDivergenceSmoothing = 1e-12;

namespace detail {

inline void check_same_grid(const Histogram &p, const Histogram &q, const char *who) {
    if (!p.same_grid(q) || p.masses.size() != q.masses.size())
        throw InvalidArgument(std::string(who) + ": histograms must share a bin grid");
}

inline std::vector<double> smoothed(const std::vector<double> &masses) {
    std::vector<double> out(masses.size());
    double total = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) total += out[i] = masses[i] + kDivergenceSmoothing;
    for (auto &v : out) v /= total;
    return out;
}

inline double relative_entropy(const std::vector<double> &p, const std::vector<double> &q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += p[i] * std::log(p[i] / q[i]);
    return std::max(d, 0.0);
}

}  // namespace detail

/// KL(P || Q) in nats, after adding 1e-12 to every bin of both and renormalizing.
inline double kl_divergence(const Histogram &p, const Histogram &q) {
    detail::check_same_grid(p, q, "kl_divergence");
    return detail::relative_entropy(detail::smoothed(p.masses), detail::smoothed(q.masses));
}

/// Jensen-Shannon distance sqrt(KL(P||M)/2 + KL(Q||M)/2), M = (P+Q)/2, in nats,
/// on the smoothed distributions. Lies in [0, sqrt(ln 2)].
inline double js_distance(const Histogram &p, const Histogram &q) {
    detail::check_same_grid(p, q, "js_distance");
    const auto ps = detail::smoothed(p.masses);
    const auto qs = detail::smoothed(q.masses);
    std::vector<double> mid(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) mid[i] = 0.5 * (ps[i] + qs[i]);
    return std::sqrt(0.5 * detail::relative_entropy(ps, mid) + 0.5 * detail::relative_entropy(qs, mid));
}

/// Eigenvalues (descending) of the reduced state of the first k qubits.
inline std::vector<double> bipartition_eigenvalues(const StateVector &state, std::size_t k) {
    if (k < 1 || k >= state.n_qubits())
        throw InvalidArgument("bipartition_eigenvalues: subsystem size must lie in [1, n-1]");
    std::vector<std::size_t> keep(k);
    for (std::size_t q = 0; q < k; ++q) keep[q] = q;
    const Eigen::MatrixXcd m = detail::split_amplitudes(state, keep);
    // rho_A = M M^dagger and M^dagger M share their nonzero spectrum.
    const Eigen::MatrixXcd gram = m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint())
                                                       : Eigen::MatrixXcd(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    std::vector<double> lambda(static_cast<std::size_t>(m.rows()), 0.0);
    const auto &ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) lambda[static_cast<std::size_t>(i)] = std::max(ev[i], 0.0);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return lambda;
}

inline constexpr double kSpectrumCutoff = 30.0;

/// Entanglement energies xi = -ln(lambda), with lambda < e^-cutoff mapped to xi = cutoff.
inline std::vector<double> entanglement_energies(std::span<const double> lambda, double cutoff = kSpectrumCutoff) {
    std::vector<double> xi(lambda.size());
    const double floor = std::exp(-cutoff);
    for (std::size_t i = 0; i < lambda.size(); ++i)
        xi[i] = lambda[i] < floor ? cutoff : std::min(-std::log(lambda[i]), cutoff);
    return xi;
}

/// Finite-size Haar reference for entanglement spectra.
struct MPReference {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    std::vector<std::vector<double>> eigenvalues;  // per sample, descending
    std::vector<double> mean_lambda;               // per rank
    std::vector<double> mean_xi;                   // per rank (rank 0 = largest lambda)
    Histogram xi_histogram;                        // pooled xi over [0, cutoff]

    double mean_purity() const {
        double total = 0.0;
        for (const auto &ev : eigenvalues)
            for (double l : ev) total += l * l;
        return total / static_cast<double>(eigenvalues.size());
    }
};

/// Spectra of rho_A (A = first k of n qubits) for Haar-random states; sample i uses seed + i.
inline MPReference mp_reference_spectrum(std::size_t n_qubits, std::size_t k, std::size_t samples, Seed seed,
                                         std::size_t bins = 75, double cutoff = kSpectrumCutoff) {
    if (k < 1 || k + 1 > n_qubits) throw InvalidArgument("mp_reference_spectrum: k must lie in [1, n-1]");
    if (samples < 1) throw InvalidArgument("mp_reference_spectrum: need at least one sample");
    MPReference ref;
    ref.dim_a = std::size_t{1} << k;
    ref.dim_b = std::size_t{1} << (n_qubits - k);
    ref.eigenvalues.resize(samples);
    parallel_for(samples, [&](std::size_t i) {
        ref.eigenvalues[i] = bipartition_eigenvalues(sample_haar_state(n_qubits, seed + i), k);
    });
    ref.mean_lambda.assign(ref.dim_a, 0.0);
    ref.mean_xi.assign(ref.dim_a, 0.0);
    std::vector<double> pooled;
    pooled.reserve(samples * ref.dim_a);
    for (const auto &ev : ref.eigenvalues) {
        const auto xi = entanglement_energies(ev, cutoff);
        for (std::size_t r = 0; r < ev.size(); ++r) {
            ref.mean_lambda[r] += ev[r] / static_cast<double>(samples);
            ref.mean_xi[r] += xi[r] / static_cast<double>(samples);
        }
        pooled.insert(pooled.end(), xi.begin(), xi.end());
    }
    ref.xi_histogram = histogram(pooled, bins, 0.0, cutoff);
    return ref;
}

}  // namespace pqc_lens
