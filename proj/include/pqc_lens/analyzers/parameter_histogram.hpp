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
#include <span>
#include <vector>

#include "pqc_lens/stats.hpp"
#include "pqc_lens/trainer.hpp"

namespace pqc_lens {

struct ParameterHistograms {
    std::vector<double> range_lo;                 // per parameter
    std::vector<double> range_hi;                 // per parameter
    std::vector<std::vector<Histogram>> table;    // [step][parameter]
};

/// Marginal distribution of every parameter across an ensemble of training
/// runs at every step. Each parameter uses one range, the pooled min/max over
/// all members and steps (widened by 0.5 either side when degenerate).
inline ParameterHistograms parameter_histogram(std::span<const TrainingTrace> ensemble, std::size_t bins) {
    if (ensemble.size() < 2) throw InvalidArgument("parameter_histogram: need at least 2 traces");
    const std::size_t steps = ensemble.front().thetas.size();
    const std::size_t m = steps ? ensemble.front().thetas.front().size() : 0;
    for (const auto &t : ensemble) {
        if (t.thetas.size() != steps) throw InvalidArgument("parameter_histogram: traces have different lengths");
        for (const auto &th : t.thetas)
            if (th.size() != m) throw InvalidArgument("parameter_histogram: traces have different parameter counts");
    }
    if (steps == 0 || m == 0) throw InvalidArgument("parameter_histogram: traces are empty");

    ParameterHistograms out;
    out.range_lo.assign(m, std::numeric_limits<double>::infinity());
    out.range_hi.assign(m, -std::numeric_limits<double>::infinity());
    for (const auto &t : ensemble)
        for (const auto &th : t.thetas)
            for (std::size_t i = 0; i < m; ++i) {
                out.range_lo[i] = std::min(out.range_lo[i], th[i]);
                out.range_hi[i] = std::max(out.range_hi[i], th[i]);
            }
    for (std::size_t i = 0; i < m; ++i) {
        if (!(out.range_hi[i] > out.range_lo[i])) {
            out.range_lo[i] -= 0.5;
            out.range_hi[i] += 0.5;
        }
    }
    out.table.resize(steps);
    std::vector<double> column(ensemble.size());
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t e = 0; e < ensemble.size(); ++e) column[e] = ensemble[e].thetas[s][i];
            out.table[s].push_back(histogram(column, bins, out.range_lo[i], out.range_hi[i]));
        }
    }
    return out;
}

}  // namespace pqc_lens
