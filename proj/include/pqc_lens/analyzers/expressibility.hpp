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

#include <cstddef>
#include <vector>

#include "pqc_lens/analyzers/common.hpp"
#include "pqc_lens/circuit.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/stats.hpp"

namespace pqc_lens {

inline constexpr std::size_t kDefaultFidelityBins = 75;

struct ExpressibilityReport {
    Divergence measure = Divergence::KLD;
    double value = 0.0;
    Histogram fidelity_histogram;  // sampled PQC fidelities
    Histogram haar_histogram;      // closed-form Haar law on the same grid
    std::vector<double> fidelities;
    std::size_t samples = 0;
};

/// Divergence between the fidelity distribution of state pairs drawn from
/// the circuit (theta uniform on [0, 2pi)^M, a fresh pair per sample) and the
/// Haar fidelity law for dimension 2^n. Smaller means more expressive.
inline ExpressibilityReport expressibility(const CircuitDescriptor &circuit, std::size_t samples, Divergence measure,
                                           std::size_t bins = kDefaultFidelityBins, Seed seed = 0) {
    if (samples < 2) throw InvalidArgument("expressibility: need at least 2 samples");
    ExpressibilityReport report;
    report.measure = measure;
    report.samples = samples;
    report.fidelities.resize(samples);
    const std::size_t m = circuit.num_parameters();
    parallel_for(samples, [&](std::size_t i) {
        Rng rng = task_rng(seed, i);
        const auto a = uniform_parameters(m, rng);
        const auto b = uniform_parameters(m, rng);
        report.fidelities[i] = simulate(circuit, a).fidelity(simulate(circuit, b));
    });
    report.fidelity_histogram = histogram(report.fidelities, bins, 0.0, 1.0);
    report.haar_histogram = haar_fidelity_histogram(circuit.dimension(), bins);
    report.value = divergence(report.fidelity_histogram, report.haar_histogram, measure);
    return report;
}

}  // namespace pqc_lens
