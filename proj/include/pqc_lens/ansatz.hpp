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
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqc_lens/circuit.hpp"
#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"

namespace pqc_lens {

/// Undirected simple graph on nodes 0..n_nodes-1.
struct Graph {
    std::size_t n_nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Uniformly random graph with exactly m edges (Erdos-Renyi G(n, m)).
inline Graph gnm_random_graph(std::size_t n, std::size_t m, Seed seed) {
    const std::size_t max_edges = n * (n - 1) / 2;
    if (n < 2) throw InvalidArgument("gnm_random_graph: need at least 2 nodes");
    if (m > max_edges)
        throw InvalidArgument("gnm_random_graph: " + std::to_string(m) + " edges exceed the maximum " +
                              std::to_string(max_edges));
    std::vector<std::pair<std::size_t, std::size_t>> all;
    all.reserve(max_edges);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    Rng rng(seed);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(m);
    std::sort(all.begin(), all.end());
    return {n, std::move(all)};
}

/// Number of edges crossing the partition given by a bitstring (qubit 0 first).
inline std::size_t cut_size(const Graph &graph, std::string_view bits) {
    std::size_t cut = 0;
    for (auto [u, v] : graph.edges) cut += bits[u] != bits[v];
    return cut;
}

/// Exhaustive MaxCut value; exponential in n_nodes.
inline std::size_t max_cut_brute_force(const Graph &graph) {
    std::size_t best = 0;
    std::string bits(graph.n_nodes, '0');
    for (std::size_t mask = 0; mask < (std::size_t{1} << graph.n_nodes); ++mask) {
        for (std::size_t q = 0; q < graph.n_nodes; ++q) bits[q] = ((mask >> q) & 1) ? '1' : '0';
        best = std::max(best, cut_size(graph, bits));
    }
    return best;
}

/// Sum over edges of Z_u Z_v / 2; minimizing it maximizes the expected cut,
/// since cut = |E|/2 - <cost>.
inline PauliSum maxcut_cost(const Graph &graph) {
    PauliSum cost;
    for (auto [u, v] : graph.edges) cost.add(0.5, {{u, Pauli::Z}, {v, Pauli::Z}});
    return cost;
}

/// QAOA ansatz for MaxCut: a Hadamard layer, then p blocks of
/// CX(u,v) RZ(v, gamma_i) CX(u,v) per edge followed by RX(q, 2 beta_i) per qubit.
/// Parameters are ordered gamma_0, beta_0, gamma_1, beta_1, ...
inline CircuitDescriptor qaoa_builder(const Graph &graph, std::size_t p) {
    if (p < 1) throw InvalidArgument("qaoa_builder: p must be at least 1");
    if (graph.n_nodes < 2) throw InvalidArgument("qaoa_builder: graph needs at least 2 nodes");
    if (graph.edges.empty()) throw InvalidArgument("qaoa_builder: graph has no edges");
    for (auto [u, v] : graph.edges) {
        if (u == v) throw InvalidArgument("qaoa_builder: self-loop on node " + std::to_string(u));
        if (u >= graph.n_nodes || v >= graph.n_nodes) throw InvalidArgument("qaoa_builder: edge node out of range");
    }
    CircuitBuilder b(graph.n_nodes);
    for (std::size_t q = 0; q < graph.n_nodes; ++q) b.h(q);
    for (std::size_t i = 0; i < p; ++i) {
        auto gamma = b.param("gamma" + std::to_string(i));
        auto beta = b.param("beta" + std::to_string(i));
        for (auto [u, v] : graph.edges) b.cx(u, v).rz(v, gamma).cx(u, v);
        for (std::size_t q = 0; q < graph.n_nodes; ++q) b.rx(q, 2.0 * beta);
    }
    return b.build(maxcut_cost(graph));
}

enum class Entangler {
    Chain,     // CX(i, i+1)
    AllPairs,  // CX(i, j) for every i < j
};

/// Layered hardware-efficient ansatz: each layer applies RX RZ RX on every
/// qubit and then the entangling pattern.
inline CircuitDescriptor layered_ansatz(std::size_t n_qubits, std::size_t layers, Entangler entangler) {
    if (layers < 1) throw InvalidArgument("layered_ansatz: need at least one layer");
    CircuitBuilder b(n_qubits);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            const std::string stem = "t" + std::to_string(l) + "_" + std::to_string(q) + "_";
            b.rx(q, b.param(stem + "0")).rz(q, b.param(stem + "1")).rx(q, b.param(stem + "2"));
        }
        if (entangler == Entangler::Chain) {
            for (std::size_t q = 0; q + 1 < n_qubits; ++q) b.cx(q, q + 1);
        } else {
            for (std::size_t i = 0; i < n_qubits; ++i)
                for (std::size_t j = i + 1; j < n_qubits; ++j) b.cx(i, j);
        }
    }
    return b.build();
}

/// RX RZ RX on every qubit followed by the first `num_cx` gates of the
/// sequence CX(0,1), CX(0,2), ..., CX(n-2,n-1).
inline CircuitDescriptor rotation_ansatz_with_cx(std::size_t n_qubits, std::size_t num_cx) {
    if (num_cx > n_qubits * (n_qubits - 1) / 2) throw InvalidArgument("rotation_ansatz_with_cx: too many CX gates");
    CircuitBuilder b(n_qubits);
    for (std::size_t q = 0; q < n_qubits; ++q) {
        const std::string stem = "t" + std::to_string(q) + "_";
        b.rx(q, b.param(stem + "0")).rz(q, b.param(stem + "1")).rx(q, b.param(stem + "2"));
    }
    std::size_t placed = 0;
    for (std::size_t i = 0; i < n_qubits && placed < num_cx; ++i)
        for (std::size_t j = i + 1; j < n_qubits && placed < num_cx; ++j, ++placed) b.cx(i, j);
    return b.build();
}

/// Identity-learning ansatz RX(0, t1) RX(1, t2) CZ(0, 1), extended to n
/// qubits with spectator rotations RX(j, pi/2) for j >= 2 and a CZ chain.
/// The spectator angle satisfies cos^2(pi/4) = 1/2, the uniform-theta average
/// of cos^2(t/2), so the (t1, t2) slice equals the landscape averaged over
/// uniformly drawn spectator angles.
inline CircuitDescriptor identity_learning_ansatz(std::size_t n_qubits) {
    if (n_qubits < 2) throw InvalidArgument("identity_learning_ansatz: need at least 2 qubits");
    CircuitBuilder b(n_qubits);
    b.rx(0, b.param("theta1")).rx(1, b.param("theta2"));
    for (std::size_t q = 2; q < n_qubits; ++q) b.rx(q, std::numbers::pi / 2);
    for (std::size_t q = 0; q + 1 < n_qubits; ++q) b.cz(q, q + 1);
    return b.build();
}

/// Four-qubit M_Z entangler: RX, RZ on qubits 0 and 2, then CX(0,1), CX(2,3).
inline CircuitDescriptor mz_entangler_circuit() {
    CircuitBuilder b(4);
    auto t1 = b.param("theta1");
    auto t2 = b.param("theta2");
    auto t3 = b.param("theta3");
    auto t4 = b.param("theta4");
    b.rx(0, t1).rz(0, t2).rx(2, t3).rz(2, t4).cx(0, 1).cx(2, 3);
    return b.build();
}

}  // namespace pqc_lens
