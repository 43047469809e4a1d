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

#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"
#include "pqc_lens/stats.hpp"

namespace pqc_lens {

/// theta ~ U[0, 2pi)^count: the sampling convention of every ensemble analyzer.
inline std::vector<double> uniform_parameters(std::size_t count, Rng &rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(count);
    for (auto &t : theta) t = angle(rng);
    return theta;
}

enum class Divergence { KLD, JSD };

constexpr std::string_view to_string(Divergence d) { return d == Divergence::KLD ? "kld" : "jsd"; }

inline double divergence(const Histogram &p, const Histogram &q, Divergence measure) {
    return measure == Divergence::KLD ? kl_divergence(p, q) : js_distance(p, q);
}

}  // namespace pqc_lens
