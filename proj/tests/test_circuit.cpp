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


#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace pqc_lens;
using pqc_lens::testing::random_circuit;

TEST_CASE("parse one-qubit H RZ spec") {
    const auto c = parse_circuit_spec(R"({
        "n_qubits": 1,
        "parameters": ["t1"],
        "gates": [{"kind": "H", "targets": [0]},
                  {"kind": "RZ", "targets": [0], "angle": {"param": "t1"}}]
    })");
    CHECK(c.n_qubits() == 1);
    CHECK(c.gates().size() == 2);
    CHECK(c.num_parameters() == 1);
    CHECK(c.parameters()[0].name == "t1");
    CHECK_FALSE(c.cost().has_value());
}

TEST_CASE("empty circuit is the identity") {
    const auto c = parse_circuit_spec(R"({"n_qubits": 1, "gates": []})");
    CHECK(c.gates().empty());
    CHECK(c.num_parameters() == 0);
    const auto s = simulate(c, std::vector<double>{});
    CHECK(s[0] == Complex(1.0, 0.0));
}

TEST_CASE("spec errors are reported as parse errors") {
    const char *undeclared = R"({"n_qubits": 1, "parameters": ["t1"],
        "gates": [{"kind": "RX", "targets": [0], "angle": {"param": "t1"}},
                  {"kind": "RX", "targets": [0], "angle": {"param": "t9"}}]})";
    CHECK_THROWS_WITH(parse_circuit_spec(undeclared), Catch::Matchers::ContainsSubstring("undeclared parameter 't9'"));
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [{"kind": "U3", "targets": [0]}]})"), ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 2, "gates": [{"kind": "H", "targets": [2]}]})"), ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "parameters": ["a", "a"],
        "gates": [{"kind": "RX", "targets": [0], "angle": {"param": "a"}}]})"),
                    ParseError);
    // declared but never used
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "parameters": ["a"], "gates": []})"), ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 2, "gates": [{"kind": "CX", "targets": [1, 1]}]})"), ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [{"kind": "H", "targets": [0], "angle": 1}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [{"kind": "RX", "targets": [0]}]})"), ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [], "extra": 1})"), ParseError);
}

TEST_CASE("syntax errors carry a byte position") {
    try {
        parse_circuit_spec("{\"n_qubits\": 1,\n \"gates\": [}");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.position() != std::string::npos);
        CHECK(e.position() > 10);
    }
}

TEST_CASE("cost terms parse into a Pauli sum") {
    const auto c = parse_circuit_spec(R"({"n_qubits": 2, "gates": [],
        "cost": [{"coeff": 0.5, "paulis": {"0": "Z", "1": "Z"}}, {"coeff": -1, "paulis": {"1": "X"}}]})");
    REQUIRE(c.cost());
    const auto &t = c.cost()->terms();
    REQUIRE(t.size() == 2);
    CHECK(t[0].coeff == 0.5);
    CHECK(t[0].paulis.at(1) == Pauli::Z);
    CHECK(t[1].paulis.at(1) == Pauli::X);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [], "cost": [{"coeff": 1, "paulis": {}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit_spec(R"({"n_qubits": 1, "gates": [], "cost": [{"coeff": 1, "paulis": {"0": "W"}}]})"),
                    ParseError);
}

TEST_CASE("serialize then parse reproduces random descriptors") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        const auto c = random_circuit(rng, n, rng() % 30, rng() % 6, trial % 2 == 0);
        const auto text = serialize_circuit_spec(c);
        INFO(text);
        CHECK(parse_circuit_spec(text) == c);
        CHECK(parse_circuit_spec(serialize_circuit_spec(c, -1)) == c);
    }
}

TEST_CASE("bind substitutes prefactor times parameter") {
    CircuitBuilder b(1);
    auto t = b.param("t1");
    b.h(0).rz(0, t).rx(0, 2.0 * t);
    const auto c = b.build();
    const std::vector<double> zero{0.0};
    CHECK(pqc_lens::bind(c, zero).gates[1].angle == 0.0);
    const std::vector<double> half_pi{std::numbers::pi / 2};
    const auto bound = pqc_lens::bind(c, half_pi);
    CHECK(bound.gates[2].angle == Catch::Approx(std::numbers::pi));
    REQUIRE(bound.gates.size() == 3);
    CHECK(bound.gates[0].kind == GateKind::H);
    CHECK(bound.gates[2].kind == GateKind::RX);

    CHECK_THROWS_AS(pqc_lens::bind(c, std::vector<double>{}), InvalidArgument);
    CHECK_THROWS_AS(pqc_lens::bind(c, std::vector<double>{std::nan("")}), InvalidArgument);
    CHECK_THROWS_AS(pqc_lens::bind(c, std::vector<double>{std::numeric_limits<double>::infinity()}), InvalidArgument);
}

TEST_CASE("bind never reorders gates") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_circuit(rng, 3, 20, 4);
        const auto theta = pqc_lens::testing::random_angles(rng, c.num_parameters());
        const auto bound = pqc_lens::bind(c, theta);
        REQUIRE(bound.gates.size() == c.gates().size());
        for (std::size_t g = 0; g < bound.gates.size(); ++g) {
            const auto &src = c.gates()[g];
            CHECK(bound.gates[g].kind == src.kind);
            CHECK(bound.gates[g].q0 == src.targets[0]);
            if (const auto *ref = std::get_if<ParamRef>(&src.angle))
                CHECK(bound.gates[g].angle == ref->prefactor * theta[ref->index]);
            else if (const auto *lit = std::get_if<double>(&src.angle))
                CHECK(bound.gates[g].angle == *lit);
        }
    }
}

TEST_CASE("QAOA triangle p=1 structure") {
    const Graph tri{3, {{0, 1}, {0, 2}, {1, 2}}};
    const auto c = qaoa_builder(tri, 1);
    CHECK(c.num_parameters() == 2);
    REQUIRE(c.gates().size() == 3 + 9 + 3);
    std::size_t h = 0, cx = 0, rz = 0, rx = 0;
    for (const auto &g : c.gates()) {
        h += g.kind == GateKind::H;
        cx += g.kind == GateKind::CX;
        rz += g.kind == GateKind::RZ;
        rx += g.kind == GateKind::RX;
    }
    CHECK(h == 3);
    CHECK(cx == 6);
    CHECK(rz == 3);
    CHECK(rx == 3);
    REQUIRE(c.cost());
    CHECK(c.cost()->terms().size() == 3);
    for (const auto &t : c.cost()->terms()) {
        CHECK(t.coeff == 0.5);
        CHECK(t.paulis.size() == 2);
    }

    // Hand substitution with theta = (gamma, beta) = (0.3, 0.7).
    const std::vector<double> theta{0.3, 0.7};
    const auto bound = pqc_lens::bind(c, theta);
    for (std::size_t g = 3; g < 12; g += 3) {
        CHECK(bound.gates[g].kind == GateKind::CX);
        CHECK(bound.gates[g + 1].angle == 0.3);
        CHECK(bound.gates[g + 2].kind == GateKind::CX);
    }
    for (std::size_t g = 12; g < 15; ++g) CHECK(bound.gates[g].angle == 2 * 0.7);
}

TEST_CASE("QAOA single edge and parameter counts") {
    const auto c = qaoa_builder(Graph{2, {{0, 1}}}, 1);
    CHECK(c.gates().size() == 2 + 3 + 2);
    REQUIRE(c.cost()->terms().size() == 1);
    CHECK(c.cost()->terms()[0].coeff == 0.5);

    for (std::size_t p : {1, 2, 5}) {
        const Graph g = gnm_random_graph(8, 20, 42);
        CHECK(g.edges.size() == 20);
        const auto q = qaoa_builder(g, p);
        CHECK(q.num_parameters() == 2 * p);
        CHECK(q.gates().size() == 8 + p * (3 * 20 + 8));
    }
    CHECK_THROWS_AS(qaoa_builder(Graph{2, {{1, 1}}}, 1), InvalidArgument);
    CHECK_THROWS_AS(qaoa_builder(Graph{2, {}}, 1), InvalidArgument);
    CHECK_THROWS_AS(qaoa_builder(Graph{2, {{0, 1}}}, 0), InvalidArgument);
}

TEST_CASE("random graphs are simple and reproducible") {
    const auto a = gnm_random_graph(8, 20, 5), b = gnm_random_graph(8, 20, 5);
    CHECK(a.edges == b.edges);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto &[u, v] : a.edges) {
        CHECK(u < v);
        CHECK(v < 8);
        CHECK(seen.insert({u, v}).second);
    }
    CHECK_THROWS_AS(gnm_random_graph(3, 4, 0), InvalidArgument);
    CHECK(max_cut_brute_force(Graph{3, {{0, 1}, {0, 2}, {1, 2}}}) == 2);
    CHECK(cut_size(Graph{3, {{0, 1}, {0, 2}, {1, 2}}}, "011") == 2);
}

TEST_CASE("descriptor invariants are enforced") {
    CHECK_THROWS_AS(CircuitDescriptor(0, {}, {}), InvalidArgument);
    CHECK_THROWS_AS(CircuitDescriptor(1, {{GateKind::CX, {0}, {}}}, {}), InvalidArgument);
    CHECK_THROWS_AS(CircuitDescriptor(1, {{GateKind::RX, {0}, ParamRef{0, 0.0}}}, {"a"}), InvalidArgument);
    CHECK_THROWS_AS(CircuitDescriptor(1, {{GateKind::RX, {0}, ParamRef{1, 1.0}}}, {"a"}), InvalidArgument);
    CHECK_THROWS_AS(PauliSum().add(std::nan(""), {{0, Pauli::Z}}), InvalidArgument);
    CHECK_THROWS_AS(CircuitDescriptor(1, {}, {}, PauliSum().add(1.0, {{3, Pauli::Z}})), InvalidArgument);
}
