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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "pqc_lens/error.hpp"

namespace pqc_lens {

enum class GateKind { H, X, Y, Z, RX, RY, RZ, CX, CZ };

constexpr std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CX: return "CX";
        case GateKind::CZ: return "CZ";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_string(std::string_view s) {
    for (auto k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::RX, GateKind::RY,
                   GateKind::RZ, GateKind::CX, GateKind::CZ}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

constexpr bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

constexpr std::size_t arity(GateKind k) {
    return (k == GateKind::CX || k == GateKind::CZ) ? 2 : 1;
}

/// A declared circuit parameter; `index` is its position in theta.
struct ParameterId {
    std::string name;
    std::size_t index = 0;

    bool operator==(const ParameterId &) const = default;
};

/// Symbolic angle `prefactor * theta[index]`.
struct ParamRef {
    std::size_t index = 0;
    double prefactor = 1.0;

    bool operator==(const ParamRef &) const = default;
};

inline ParamRef operator*(double s, ParamRef p) { return {p.index, s * p.prefactor}; }

/// Absent (fixed gates), a literal in radians, or a parameter reference.
using Angle = std::variant<std::monostate, double, ParamRef>;

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<std::size_t> targets;
    Angle angle;

    bool operator==(const Gate &) const = default;

    bool is_parameterized() const { return std::holds_alternative<ParamRef>(angle); }
};

enum class Pauli : char { X = 'X', Y = 'Y', Z = 'Z' };

struct PauliTerm {
    double coeff = 0.0;
    std::map<std::size_t, Pauli> paulis;

    bool operator==(const PauliTerm &) const = default;
};

/// Real-weighted sum of Pauli strings; Hermitian by construction.
class PauliSum {
   public:
    PauliSum() = default;
    explicit PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
        for (const auto &t : terms_) check_term(t);
    }

    PauliSum &add(double coeff, std::map<std::size_t, Pauli> paulis) {
        PauliTerm t{coeff, std::move(paulis)};
        check_term(t);
        terms_.push_back(std::move(t));
        return *this;
    }

    const std::vector<PauliTerm> &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Largest qubit index touched plus one (0 for an empty sum).
    std::size_t min_qubits() const {
        std::size_t n = 0;
        for (const auto &t : terms_)
            for (const auto &[q, p] : t.paulis) n = std::max(n, q + 1);
        return n;
    }

    PauliSum scaled(double s) const {
        PauliSum out = *this;
        for (auto &t : out.terms_) t.coeff *= s;
        return out;
    }

    bool operator==(const PauliSum &) const = default;

   private:
    static void check_term(const PauliTerm &t) {
        if (!std::isfinite(t.coeff)) throw InvalidArgument("Pauli term coefficient must be finite");
        if (t.paulis.empty()) throw InvalidArgument("Pauli term must act on at least one qubit");
    }

    std::vector<PauliTerm> terms_;
};

/// Immutable parameterized circuit: gate list, ordered parameters, optional cost.
class CircuitDescriptor {
   public:
    CircuitDescriptor(std::size_t n_qubits, std::vector<Gate> gates,
                      std::vector<std::string> parameter_names,
                      std::optional<PauliSum> cost = std::nullopt)
        : n_qubits_(n_qubits), gates_(std::move(gates)), cost_(std::move(cost)) {
        if (n_qubits_ < 1) throw InvalidArgument("circuit needs at least one qubit");
        if (n_qubits_ > 30) throw InvalidArgument("circuit exceeds the 30-qubit statevector limit");
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < parameter_names.size(); ++i) {
            if (!seen.insert(parameter_names[i]).second)
                throw InvalidArgument("duplicate parameter name '" + parameter_names[i] + "'");
            parameters_.push_back({parameter_names[i], i});
        }
        std::vector<bool> used(parameters_.size(), false);
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            const Gate &gate = gates_[g];
            const std::string where = "gate " + std::to_string(g) + " (" + std::string(to_string(gate.kind)) + ")";
            if (gate.targets.size() != arity(gate.kind))
                throw InvalidArgument(where + ": expected " + std::to_string(arity(gate.kind)) + " target(s)");
            for (auto q : gate.targets)
                if (q >= n_qubits_)
                    throw InvalidArgument(where + ": qubit index " + std::to_string(q) + " out of range");
            if (gate.targets.size() == 2 && gate.targets[0] == gate.targets[1])
                throw InvalidArgument(where + ": targets must be distinct");
            const bool has_angle = !std::holds_alternative<std::monostate>(gate.angle);
            if (is_rotation(gate.kind) != has_angle)
                throw InvalidArgument(where + (has_angle ? ": gate takes no angle" : ": rotation needs an angle"));
            if (auto lit = std::get_if<double>(&gate.angle); lit && !std::isfinite(*lit))
                throw InvalidArgument(where + ": literal angle must be finite");
            if (auto ref = std::get_if<ParamRef>(&gate.angle)) {
                if (ref->index >= parameters_.size())
                    throw InvalidArgument(where + ": undeclared parameter index " + std::to_string(ref->index));
                if (!std::isfinite(ref->prefactor) || ref->prefactor == 0.0)
                    throw InvalidArgument(where + ": prefactor must be finite and nonzero");
                used[ref->index] = true;
            }
        }
        for (std::size_t i = 0; i < used.size(); ++i)
            if (!used[i]) throw InvalidArgument("parameter '" + parameters_[i].name + "' is never referenced");
        if (cost_ && cost_->min_qubits() > n_qubits_)
            throw InvalidArgument("cost acts on a qubit outside the circuit");
    }

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return std::size_t{1} << n_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<ParameterId> &parameters() const { return parameters_; }
    std::size_t num_parameters() const { return parameters_.size(); }
    const std::optional<PauliSum> &cost() const { return cost_; }

    std::optional<std::size_t> parameter_index(std::string_view name) const {
        for (const auto &p : parameters_)
            if (p.name == name) return p.index;
        return std::nullopt;
    }

    CircuitDescriptor with_cost(PauliSum cost) const {
        CircuitDescriptor out = *this;
        if (cost.min_qubits() > n_qubits_) throw InvalidArgument("cost acts on a qubit outside the circuit");
        out.cost_ = std::move(cost);
        return out;
    }

    bool operator==(const CircuitDescriptor &) const = default;

   private:
    std::size_t n_qubits_;
    std::vector<Gate> gates_;
    std::vector<ParameterId> parameters_;
    std::optional<PauliSum> cost_;
};

/// Fluent construction of circuits; parameters are declared in call order.
class CircuitBuilder {
   public:
    explicit CircuitBuilder(std::size_t n_qubits) : n_qubits_(n_qubits) {}

    ParamRef param(std::string name) {
        names_.push_back(std::move(name));
        return {names_.size() - 1, 1.0};
    }

    CircuitBuilder &h(std::size_t q) { return fixed(GateKind::H, q); }
    CircuitBuilder &x(std::size_t q) { return fixed(GateKind::X, q); }
    CircuitBuilder &y(std::size_t q) { return fixed(GateKind::Y, q); }
    CircuitBuilder &z(std::size_t q) { return fixed(GateKind::Z, q); }
    CircuitBuilder &rx(std::size_t q, Angle a) { return rotation(GateKind::RX, q, a); }
    CircuitBuilder &ry(std::size_t q, Angle a) { return rotation(GateKind::RY, q, a); }
    CircuitBuilder &rz(std::size_t q, Angle a) { return rotation(GateKind::RZ, q, a); }
    CircuitBuilder &cx(std::size_t c, std::size_t t) { return two(GateKind::CX, c, t); }
    CircuitBuilder &cz(std::size_t a, std::size_t b) { return two(GateKind::CZ, a, b); }

    CircuitBuilder &gate(Gate g) {
        gates_.push_back(std::move(g));
        return *this;
    }

    CircuitDescriptor build(std::optional<PauliSum> cost = std::nullopt) const {
        return CircuitDescriptor(n_qubits_, gates_, names_, std::move(cost));
    }

   private:
    CircuitBuilder &fixed(GateKind k, std::size_t q) { return gate({k, {q}, {}}); }
    CircuitBuilder &rotation(GateKind k, std::size_t q, Angle a) { return gate({k, {q}, a}); }
    CircuitBuilder &two(GateKind k, std::size_t a, std::size_t b) { return gate({k, {a, b}, {}}); }

    std::size_t n_qubits_;
    std::vector<Gate> gates_;
    std::vector<std::string> names_;
};

struct BoundGate {
    GateKind kind = GateKind::H;
    std::size_t q0 = 0;
    std::size_t q1 = 0;  // second target of CX/CZ (CX: q0 control, q1 target)
    double angle = 0.0;

    bool operator==(const BoundGate &) const = default;
};

/// Circuit with every angle resolved to a number.
struct BoundCircuit {
    std::size_t n_qubits = 0;
    std::vector<BoundGate> gates;
};

inline BoundGate bind_gate(const Gate &g, std::span<const double> theta) {
    BoundGate b{g.kind, g.targets[0], g.targets.size() > 1 ? g.targets[1] : 0, 0.0};
    if (auto lit = std::get_if<double>(&g.angle)) b.angle = *lit;
    if (auto ref = std::get_if<ParamRef>(&g.angle)) b.angle = ref->prefactor * theta[ref->index];
    return b;
}

/// Substitutes theta into every symbolic angle. Gate order is preserved.
inline BoundCircuit bind(const CircuitDescriptor &circuit, std::span<const double> theta) {
    if (theta.size() != circuit.num_parameters())
        throw InvalidArgument("bind: expected " + std::to_string(circuit.num_parameters()) +
                              " parameters, got " + std::to_string(theta.size()));
    for (double v : theta)
        if (!std::isfinite(v)) throw InvalidArgument("bind: parameter values must be finite");
    BoundCircuit out{circuit.n_qubits(), {}};
    out.gates.reserve(circuit.gates().size());
    for (const auto &g : circuit.gates()) out.gates.push_back(bind_gate(g, theta));
    return out;
}

}  // namespace pqc_lens
