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

#include <cmath>
#include <cstddef>
#include <vector>

#include "pqc_lens/analyzers/common.hpp"
#include "pqc_lens/circuit.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/stats.hpp"

namespace pqc_lens {

struct SpectrumOptions {
    Divergence measure = Divergence::KLD;
    double cutoff = -30.0;                 // on ln(lambda); xi is clamped at |cutoff|
    std::size_t bins = 75;                 // xi histogram over [0, |cutoff|]
    std::size_t reference_samples = 0;     // Haar reference size; 0 means same as samples
    Seed seed = 0;
};

struct SpectrumReport {
    Divergence measure = Divergence::KLD;
    double esd = 0.0;
    std::size_t subsystem_qubits = 0;  // k = ceil(n/2)
    double cutoff = -30.0;
    std::size_t samples = 0;
    // Per-rank means; rank r is the r-th largest eigenvalue of rho_A, so
    // mean_log_lambda is non-increasing and mean_xi = -mean_log_lambda.
    std::vector<double> mean_xi;
    std::vector<double> mean_log_lambda;
    std::vector<double> haar_mean_xi;
    Histogram xi_histogram;
    Histogram haar_xi_histogram;
};

/// Entanglement spectrum of rho_A for A = the first ceil(n/2) qubits, compared
/// against Haar-random states of the same size.
inline SpectrumReport entanglement_spectrum(const CircuitDescriptor &circuit, std::size_t samples,
                                            const SpectrumOptions &opt = {}) {
    const std::size_t n = circuit.n_qubits();
    if (n < 2) throw InvalidArgument("entanglement_spectrum: need at least 2 qubits");
    if (samples < 1) throw InvalidArgument("entanglement_spectrum: need at least 1 sample");
    if (!(opt.cutoff < 0.0)) throw InvalidArgument("entanglement_spectrum: cutoff must be negative");
    const double clamp = -opt.cutoff;
    const std::size_t k = (n + 1) / 2;
    const std::size_t dim_a = std::size_t{1} << k;

    std::vector<std::vector<double>> xi(samples);
    parallel_for(samples, [&](std::size_t i) {
        Rng rng = task_rng(opt.seed, i);
        const auto state = simulate(circuit, uniform_parameters(circuit.num_parameters(), rng));
        xi[i] = entanglement_energies(bipartition_eigenvalues(state, k), clamp);
    });

    SpectrumReport report;
    report.measure = opt.measure;
    report.subsystem_qubits = k;
    report.cutoff = opt.cutoff;
    report.samples = samples;
    report.mean_xi.assign(dim_a, 0.0);
    std::vector<double> pooled;
    pooled.reserve(samples * dim_a);
    for (const auto &row : xi) {
        for (std::size_t r = 0; r < dim_a; ++r) report.mean_xi[r] += row[r] / static_cast<double>(samples);
        pooled.insert(pooled.end(), row.begin(), row.end());
    }
    for (double v : report.mean_xi) report.mean_log_lambda.push_back(-v);
    report.xi_histogram = histogram(pooled, opt.bins, 0.0, clamp);

    const std::size_t ref_samples = opt.reference_samples ? opt.reference_samples : samples;
    const auto ref = mp_reference_spectrum(n, k, ref_samples, opt.seed ^ 0x9E3779B97F4A7C15ULL, opt.bins, clamp);
    report.haar_mean_xi = ref.mean_xi;
    report.haar_xi_histogram = ref.xi_histogram;
    report.esd = divergence(report.xi_histogram, report.haar_xi_histogram, opt.measure);
    return report;
}

}  // namespace pqc_lens
