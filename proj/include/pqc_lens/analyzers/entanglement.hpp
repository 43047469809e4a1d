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
#include <numeric>
#include <string_view>
#include <vector>

#include "pqc_lens/analyzers/common.hpp"
#include "pqc_lens/circuit.hpp"
#include "pqc_lens/simulator.hpp"

namespace pqc_lens {

enum class EntanglementMeasure { MeyerWallach, Scott };

constexpr std::string_view to_string(EntanglementMeasure m) {
    return m == EntanglementMeasure::MeyerWallach ? "meyer-wallach" : "scott";
}

/// All size-m subsets of {0..n-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> qubit_subsets(std::size_t n, std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(m);
    std::iota(cur.begin(), cur.end(), 0);
    if (m == 0 || m > n) return out;
    while (true) {
        out.push_back(cur);
        std::size_t i = m;
        while (i > 0 && cur[i - 1] == n - m + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Meyer-Wallach Q of one state: 2 (1 - mean_k Tr rho_k^2).
inline double meyer_wallach(const StateVector &state) {
    const std::size_t n = state.n_qubits();
    double purity = 0.0;
    for (std::size_t k = 0; k < n; ++k) purity += subsystem_purity(state, {k});
    return 2.0 * (1.0 - purity / static_cast<double>(n));
}

/// Scott Q_m of one state: 2^m/(2^m - 1) (1 - mean_{|S|=m} Tr rho_S^2).
inline double scott(const StateVector &state, std::size_t m) {
    const std::size_t n = state.n_qubits();
    if (m < 1 || 2 * m > n) throw InvalidArgument("scott: block size must lie in [1, n/2]");
    const auto subsets = qubit_subsets(n, m);
    double purity = 0.0;
    for (const auto &s : subsets) purity += subsystem_purity(state, s);
    const double scale = std::ldexp(1.0, static_cast<int>(m));
    return scale / (scale - 1.0) * (1.0 - purity / static_cast<double>(subsets.size()));
}

struct EntanglementReport {
    EntanglementMeasure measure = EntanglementMeasure::MeyerWallach;
    std::vector<double> values;  // MW: {Q}; Scott: {Q_1, ..., Q_floor(n/2)}
    std::size_t samples = 0;

    double value() const { return values.front(); }
};

/// Ensemble-averaged entangling capability over theta ~ U[0, 2pi)^M.
/// Sample i draws theta from seed + i, so both measures see the same states
/// for the same seed.
inline EntanglementReport entanglement_capability(const CircuitDescriptor &circuit, std::size_t samples,
                                                  EntanglementMeasure measure, Seed seed = 0) {
    const std::size_t n = circuit.n_qubits();
    if (n < 2) throw InvalidArgument("entanglement_capability: need at least 2 qubits");
    if (samples < 1) throw InvalidArgument("entanglement_capability: need at least 1 sample");
    const std::size_t width = measure == EntanglementMeasure::MeyerWallach ? 1 : n / 2;
    std::vector<std::vector<double>> per_sample(samples);
    parallel_for(samples, [&](std::size_t i) {
        Rng rng = task_rng(seed, i);
        const auto state = simulate(circuit, uniform_parameters(circuit.num_parameters(), rng));
        auto &row = per_sample[i];
        if (measure == EntanglementMeasure::MeyerWallach) {
            row.push_back(meyer_wallach(state));
        } else {
            for (std::size_t m = 1; m <= width; ++m) row.push_back(scott(state, m));
        }
    });
    EntanglementReport report{measure, std::vector<double>(width, 0.0), samples};
    for (const auto &row : per_sample)
        for (std::size_t m = 0; m < width; ++m) report.values[m] += row[m];
    for (auto &v : report.values) v /= static_cast<double>(samples);
    return report;
}

}  // namespace pqc_lens
