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

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <unordered_map>

#include "pqc_lens/circuit.hpp"
#include "pqc_lens/error.hpp"

// Circuit-spec documents are JSON:
//
//   {
//     "n_qubits": 2,
//     "parameters": ["t0", "t1"],
//     "gates": [
//       {"kind": "H", "targets": [0]},
//       {"kind": "RX", "targets": [1], "angle": {"param": "t0", "prefactor": 2.0}},
//       {"kind": "RZ", "targets": [0], "angle": 0.25},
//       {"kind": "CX", "targets": [0, 1]}
//     ],
//     "cost": [{"coeff": 0.5, "paulis": {"0": "Z", "1": "Z"}}]
//   }

namespace pqc_lens {

namespace detail {

using Json = nlohmann::ordered_json;

inline const Json &require(const Json &obj, const char *key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

inline void reject_unknown_keys(const Json &obj, std::initializer_list<std::string_view> allowed,
                                const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'");
    }
}

inline std::size_t as_index(const Json &v, const std::string &where) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(where + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

inline double as_real(const Json &v, const std::string &where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError(where + ": expected a finite number");
    return d;
}

}  // namespace detail

/// Parses and validates a circuit-spec document. Declared parameter order
/// becomes the theta ordering.
inline CircuitDescriptor parse_circuit_spec(std::string_view text) {
    using detail::Json;
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw ParseError("document must be an object", 0);
    detail::reject_unknown_keys(doc, {"n_qubits", "parameters", "gates", "cost"}, "document");

    const Json &nq = detail::require(doc, "n_qubits", "document");
    if (!nq.is_number_integer() || nq.get<long long>() < 1)
        throw ParseError("n_qubits: expected a positive integer");
    const auto n_qubits = nq.get<std::size_t>();
    if (n_qubits > 30) throw ParseError("n_qubits: at most 30 qubits are supported");

    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index_of;
    if (auto it = doc.find("parameters"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("parameters: expected a list of names");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const Json &p = (*it)[i];
            if (!p.is_string()) throw ParseError("parameters[" + std::to_string(i) + "]: expected a string");
            auto name = p.get<std::string>();
            if (!index_of.emplace(name, i).second) throw ParseError("duplicate parameter name '" + name + "'");
            names.push_back(std::move(name));
        }
    }

    std::vector<Gate> gates;
    const Json &gate_list = detail::require(doc, "gates", "document");
    if (!gate_list.is_array()) throw ParseError("gates: expected a list");
    for (std::size_t g = 0; g < gate_list.size(); ++g) {
        const std::string where = "gates[" + std::to_string(g) + "]";
        const Json &rec = gate_list[g];
        if (!rec.is_object()) throw ParseError(where + ": expected an object");
        detail::reject_unknown_keys(rec, {"kind", "targets", "angle"}, where);
        const Json &kind_field = detail::require(rec, "kind", where);
        if (!kind_field.is_string()) throw ParseError(where + ".kind: expected a string");
        auto kind = gate_kind_from_string(kind_field.get<std::string>());
        if (!kind) throw ParseError(where + ": unknown gate kind '" + kind_field.get<std::string>() + "'");

        Gate gate{*kind, {}, {}};
        const Json &targets = detail::require(rec, "targets", where);
        if (!targets.is_array()) throw ParseError(where + ".targets: expected a list");
        for (std::size_t t = 0; t < targets.size(); ++t) {
            auto q = detail::as_index(targets[t], where + ".targets[" + std::to_string(t) + "]");
            if (q >= n_qubits)
                throw ParseError(where + ": qubit index " + std::to_string(q) + " out of range for " +
                                 std::to_string(n_qubits) + " qubit(s)");
            gate.targets.push_back(q);
        }
        if (gate.targets.size() != arity(*kind))
            throw ParseError(where + ": " + std::string(to_string(*kind)) + " takes " +
                             std::to_string(arity(*kind)) + " target(s)");
        if (gate.targets.size() == 2 && gate.targets[0] == gate.targets[1])
            throw ParseError(where + ": targets must be distinct");

        if (auto a = rec.find("angle"); a != rec.end()) {
            if (!is_rotation(*kind)) throw ParseError(where + ": " + std::string(to_string(*kind)) + " takes no angle");
            if (a->is_number()) {
                gate.angle = detail::as_real(*a, where + ".angle");
            } else if (a->is_object()) {
                detail::reject_unknown_keys(*a, {"param", "prefactor"}, where + ".angle");
                const Json &pname = detail::require(*a, "param", where + ".angle");
                if (!pname.is_string()) throw ParseError(where + ".angle.param: expected a string");
                auto found = index_of.find(pname.get<std::string>());
                if (found == index_of.end())
                    throw ParseError(where + ": undeclared parameter '" + pname.get<std::string>() + "'");
                ParamRef ref{found->second, 1.0};
                if (auto pf = a->find("prefactor"); pf != a->end()) {
                    ref.prefactor = detail::as_real(*pf, where + ".angle.prefactor");
                    if (ref.prefactor == 0.0) throw ParseError(where + ".angle.prefactor: must be nonzero");
                }
                gate.angle = ref;
            } else {
                throw ParseError(where + ".angle: expected a number or {param, prefactor}");
            }
        } else if (is_rotation(*kind)) {
            throw ParseError(where + ": " + std::string(to_string(*kind)) + " needs an angle");
        }
        gates.push_back(std::move(gate));
    }

    std::optional<PauliSum> cost;
    if (auto c = doc.find("cost"); c != doc.end()) {
        if (!c->is_array()) throw ParseError("cost: expected a list of terms");
        PauliSum sum;
        for (std::size_t t = 0; t < c->size(); ++t) {
            const std::string where = "cost[" + std::to_string(t) + "]";
            const Json &term = (*c)[t];
            if (!term.is_object()) throw ParseError(where + ": expected an object");
            detail::reject_unknown_keys(term, {"coeff", "paulis"}, where);
            double coeff = detail::as_real(detail::require(term, "coeff", where), where + ".coeff");
            const Json &paulis = detail::require(term, "paulis", where);
            if (!paulis.is_object() || paulis.empty())
                throw ParseError(where + ".paulis: expected a nonempty map qubit -> X|Y|Z");
            std::map<std::size_t, Pauli> ops;
            for (auto it = paulis.begin(); it != paulis.end(); ++it) {
                std::size_t q = 0;
                const std::string &key = it.key();
                if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError(where + ".paulis: key '" + key + "' is not a qubit index");
                q = std::stoul(key);
                if (q >= n_qubits) throw ParseError(where + ": qubit index " + key + " out of range");
                const std::string op = it.value().is_string() ? it.value().get<std::string>() : "";
                if (op != "X" && op != "Y" && op != "Z")
                    throw ParseError(where + ".paulis[" + key + "]: expected \"X\", \"Y\" or \"Z\"");
                ops[q] = static_cast<Pauli>(op[0]);
            }
            sum.add(coeff, std::move(ops));
        }
        cost = std::move(sum);
    }

    try {
        return CircuitDescriptor(n_qubits, std::move(gates), std::move(names), std::move(cost));
    } catch (const InvalidArgument &e) {
        throw ParseError(e.what());
    }
}

/// Inverse of parse_circuit_spec.
inline std::string serialize_circuit_spec(const CircuitDescriptor &circuit, int indent = 2) {
    using detail::Json;
    Json doc;
    doc["n_qubits"] = circuit.n_qubits();
    Json params = Json::array();
    for (const auto &p : circuit.parameters()) params.push_back(p.name);
    doc["parameters"] = std::move(params);
    Json gates = Json::array();
    for (const auto &g : circuit.gates()) {
        Json rec;
        rec["kind"] = std::string(to_string(g.kind));
        rec["targets"] = g.targets;
        if (auto lit = std::get_if<double>(&g.angle)) rec["angle"] = *lit;
        if (auto ref = std::get_if<ParamRef>(&g.angle)) {
            Json a;
            a["param"] = circuit.parameters()[ref->index].name;
            if (ref->prefactor != 1.0) a["prefactor"] = ref->prefactor;
            rec["angle"] = std::move(a);
        }
        gates.push_back(std::move(rec));
    }
    doc["gates"] = std::move(gates);
    if (circuit.cost()) {
        Json terms = Json::array();
        for (const auto &t : circuit.cost()->terms()) {
            Json paulis = Json::object();
            for (const auto &[q, p] : t.paulis) paulis[std::to_string(q)] = std::string(1, static_cast<char>(p));
            terms.push_back({{"coeff", t.coeff}, {"paulis", std::move(paulis)}});
        }
        doc["cost"] = std::move(terms);
    }
    return doc.dump(indent);
}

}  // namespace pqc_lens
