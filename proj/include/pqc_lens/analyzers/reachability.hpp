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
#include <cstddef>
#include <limits>
#include <vector>

#include "pqc_lens/circuit.hpp"
#include "pqc_lens/simulator.hpp"
#include "pqc_lens/stats.hpp"
#include "pqc_lens/trainer.hpp"

namespace pqc_lens {

struct ReachabilityReport {
    double f_r = 0.0;       // haar_min - pqc_min, reported with its sign
    double haar_min = 0.0;  // min <O> over sampled Haar states
    double pqc_min = 0.0;   // min <O> seen while training the circuit
    std::size_t haar_samples = 0;
    std::size_t restarts = 0;
};

/// Estimates f_R = min_psi <psi|O|psi> - min_theta <psi(theta)|O|psi(theta)>
/// from Haar state j (seed + j) and `restarts` training runs.
inline ReachabilityReport reachability(const CircuitDescriptor &circuit, std::size_t haar_samples,
                                       std::size_t restarts, const OptimizerConfig &config, Seed seed) {
    if (!circuit.cost()) throw InvalidArgument("reachability: circuit has no cost observable");
    if (haar_samples < 1) throw InvalidArgument("reachability: need at least one Haar sample");
    if (restarts < 1) throw InvalidArgument("reachability: need at least one restart");
    std::vector<double> haar(haar_samples);
    parallel_for(haar_samples, [&](std::size_t j) {
        haar[j] = expectation(sample_haar_state(circuit.n_qubits(), seed + j), *circuit.cost());
    });
    ReachabilityReport r;
    r.haar_samples = haar_samples;
    r.restarts = restarts;
    r.haar_min = *std::min_element(haar.begin(), haar.end());
    r.pqc_min = std::numeric_limits<double>::infinity();
    for (const auto &t : ensemble_train(circuit, config, restarts))
        r.pqc_min = std::min(r.pqc_min, *std::min_element(t.losses.begin(), t.losses.end()));
    r.f_r = r.haar_min - r.pqc_min;
    return r;
}

}  // namespace pqc_lens
