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
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pqc_lens/circuit.hpp"
#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"
#include "pqc_lens/simulator.hpp"

namespace pqc_lens {

/// Any real-valued function of the output state that is the expectation of
/// a fixed observable (so that the parameter-shift rule applies).
using StateFunctional = std::function<double(const StateVector &)>;

inline StateFunctional cost_functional(const CircuitDescriptor &circuit) {
    if (!circuit.cost()) throw InvalidArgument("circuit has no cost observable");
    return [obs = *circuit.cost()](const StateVector &s) { return expectation(s, obs); };
}

/// C(theta) = <psi(theta)| O |psi(theta)>.
inline double cost_value(const CircuitDescriptor &circuit, std::span<const double> theta) {
    if (!circuit.cost()) throw InvalidArgument("circuit has no cost observable");
    return expectation(simulate(circuit, theta), *circuit.cost());
}

/// Parameter-shift gradient of `f(U(theta)|0>)`. Every occurrence of a
/// parameter with prefactor s contributes (s/2)[f(angle + pi/2) - f(angle - pi/2)],
/// i.e. a shift of theta by +-pi/(2s) on that occurrence alone.
inline std::vector<double> parameter_shift_gradient(const CircuitDescriptor &circuit, std::span<const double> theta,
                                                    const StateFunctional &f) {
    const BoundCircuit bound = bind(circuit, theta);
    std::vector<double> grad(circuit.num_parameters(), 0.0);
    StateVector prefix(circuit.n_qubits());
    const auto &gates = circuit.gates();
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (const auto *ref = std::get_if<ParamRef>(&gates[g].angle)) {
            double shifted[2];
            for (int sign = 0; sign < 2; ++sign) {
                StateVector s = prefix;
                BoundGate moved = bound.gates[g];
                moved.angle += (sign == 0 ? 0.5 : -0.5) * std::numbers::pi;
                s.apply(moved);
                for (std::size_t k = g + 1; k < gates.size(); ++k) s.apply(bound.gates[k]);
                shifted[sign] = f(s);
            }
            grad[ref->index] += 0.5 * ref->prefactor * (shifted[0] - shifted[1]);
        }
        prefix.apply(bound.gates[g]);
    }
    return grad;
}

/// dC/dtheta for the circuit's cost observable.
inline std::vector<double> gradient(const CircuitDescriptor &circuit, std::span<const double> theta) {
    return parameter_shift_gradient(circuit, theta, cost_functional(circuit));
}

enum class OptimizerMethod { GD, Adam };

struct UniformAngles {};  // theta ~ U[0, 2pi)^M
struct ZeroAngles {};
using Initialization = std::variant<UniformAngles, ZeroAngles, std::vector<double>>;

struct OptimizerConfig {
    OptimizerMethod method = OptimizerMethod::Adam;
    double learning_rate = 0.05;
    std::size_t steps = 100;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    Seed seed = 0;
    Initialization init = UniformAngles{};

    void validate() const {
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
            throw InvalidArgument("OptimizerConfig: learning rate must be positive");
        if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
            throw InvalidArgument("OptimizerConfig: Adam betas must lie in (0, 1)");
        if (!(epsilon > 0.0)) throw InvalidArgument("OptimizerConfig: epsilon must be positive");
    }
};

/// Parameter vectors and losses at steps 0..T of one training run.
struct TrainingTrace {
    std::vector<std::vector<double>> thetas;
    std::vector<double> losses;
    std::size_t restart_id = 0;

    std::size_t steps() const { return losses.empty() ? 0 : losses.size() - 1; }
    double final_loss() const { return losses.back(); }
};

/// Called with (step, theta, loss) for the initial point and after every update.
using TrainingObserver = std::function<void(std::size_t, std::span<const double>, double)>;

inline std::vector<double> initial_parameters(const Initialization &init, std::size_t count, Seed seed) {
    std::vector<double> theta(count, 0.0);
    if (std::holds_alternative<UniformAngles>(init)) {
        Rng rng(seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        for (auto &t : theta) t = angle(rng);
    } else if (const auto *given = std::get_if<std::vector<double>>(&init)) {
        if (given->size() != count)
            throw InvalidArgument("initial parameters: expected " + std::to_string(count) + " values");
        theta = *given;
    }
    return theta;
}

/// Minimizes the circuit's cost with gradient descent or Adam using exact
/// expectations and parameter-shift gradients.
inline TrainingTrace train(const CircuitDescriptor &circuit, const OptimizerConfig &config,
                           std::span<const TrainingObserver> observers = {}) {
    config.validate();
    const auto f = cost_functional(circuit);
    const std::size_t m = circuit.num_parameters();
    std::vector<double> theta = initial_parameters(config.init, m, config.seed);

    TrainingTrace trace;
    trace.thetas.reserve(config.steps + 1);
    trace.losses.reserve(config.steps + 1);
    auto record = [&](std::size_t step) {
        const double loss = f(simulate(circuit, theta));
        if (!std::isfinite(loss))
            throw NumericalError("training diverged: non-finite loss at step " + std::to_string(step));
        trace.thetas.push_back(theta);
        trace.losses.push_back(loss);
        for (const auto &obs : observers) obs(step, theta, loss);
    };
    record(0);

    std::vector<double> first(m, 0.0), second(m, 0.0);
    for (std::size_t step = 1; step <= config.steps; ++step) {
        const auto grad = parameter_shift_gradient(circuit, theta, f);
        if (config.method == OptimizerMethod::GD) {
            for (std::size_t i = 0; i < m; ++i) theta[i] -= config.learning_rate * grad[i];
        } else {
            const double t = static_cast<double>(step);
            const double c1 = 1.0 - std::pow(config.beta1, t);
            const double c2 = 1.0 - std::pow(config.beta2, t);
            for (std::size_t i = 0; i < m; ++i) {
                first[i] = config.beta1 * first[i] + (1.0 - config.beta1) * grad[i];
                second[i] = config.beta2 * second[i] + (1.0 - config.beta2) * grad[i] * grad[i];
                theta[i] -= config.learning_rate * (first[i] / c1) / (std::sqrt(second[i] / c2) + config.epsilon);
            }
        }
        for (double v : theta)
            if (!std::isfinite(v))
                throw NumericalError("training diverged: non-finite parameters at step " + std::to_string(step));
        record(step);
    }
    return trace;
}

/// Builds fresh observers for one restart.
using ObserverFactory = std::function<std::vector<TrainingObserver>(std::size_t restart)>;

/// Independent restarts; restart r trains with seed config.seed + r.
inline std::vector<TrainingTrace> ensemble_train(const CircuitDescriptor &circuit, const OptimizerConfig &config,
                                                 std::size_t restarts, const ObserverFactory &observers = {}) {
    if (restarts < 1) throw InvalidArgument("ensemble_train: need at least one restart");
    std::vector<TrainingTrace> traces(restarts);
    parallel_for(restarts, [&](std::size_t r) {
        OptimizerConfig cfg = config;
        cfg.seed = config.seed + r;
        const auto obs = observers ? observers(r) : std::vector<TrainingObserver>{};
        traces[r] = train(circuit, cfg, obs);
        traces[r].restart_id = r;
    });
    return traces;
}

}  // namespace pqc_lens
