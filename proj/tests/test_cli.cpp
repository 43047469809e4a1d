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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pqc_lens/cli.hpp"
#include "test_support.hpp"

using namespace pqc_lens;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("pqc-lens-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_spec(const fs::path &dir, const std::string &name, const CircuitDescriptor &c) {
    const auto p = dir / name;
    std::ofstream(p) << serialize_circuit_spec(c);
    return p;
}

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json read_report(const fs::path &dir) { return Json::parse(slurp(dir / "report.json")); }

void check_artifacts(const fs::path &dir) {
    const auto r = read_report(dir);
    std::set<std::string> listed;
    for (const auto &a : r["artifacts"]) listed.insert(a.get<std::string>());
    std::set<std::string> present;
    for (const auto &e : fs::directory_iterator(dir)) present.insert(e.path().filename().string());
    CHECK(listed == present);
}

CircuitDescriptor cost_circuit() {
    PauliSum cost;
    cost.add(1.0, {{0, Pauli::Z}}).add(0.5, {{0, Pauli::Z}, {1, Pauli::Z}});
    return layered_ansatz(2, 1, Entangler::Chain).with_cost(cost);
}

}  // namespace

TEST_CASE("expressibility report fields") {
    const auto dir = scratch("expr");
    CircuitBuilder b(1);
    b.h(0).rz(0, b.param("a"));
    const auto spec = write_spec(dir, "c.json", b.build());
    const auto out = dir / "out";
    const auto r = run({"expressibility", "--circuit", spec.string(), "--samples", "1000", "--measure", "jsd",
                        "--seed", "7", "--out", out.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto j = read_report(out);
    CHECK(j["schema"] == "pqc-lens/1");
    CHECK(j["measure"] == "jsd");
    CHECK(j["samples"] == 1000);
    CHECK(j["seed"] == 7);
    CHECK(j["value"].get<double>() > 0.0);
    CHECK(fs::exists(out / "expressibility.svg"));
    check_artifacts(out);
}

TEST_CASE("entanglement command on the M_Z circuit") {
    const auto dir = scratch("mz");
    const auto spec = write_spec(dir, "mz.json", mz_entangler_circuit());
    const auto out = dir / "out";
    REQUIRE(run({"entanglement", "--circuit", spec.string(), "--samples", "1000", "--measure", "meyer-wallach",
                 "--out", out.string()})
                .code == 0);
    CHECK(read_report(out)["value"].get<double>() == Catch::Approx(0.501).margin(0.03));
    check_artifacts(out);
}

TEST_CASE("every command writes its artifacts deterministically") {
    const auto dir = scratch("all");
    const auto spec = write_spec(dir, "c.json", cost_circuit()).string();
    const std::vector<std::vector<std::string>> commands{
        {"expressibility", "--circuit", spec, "--samples", "50"},
        {"entanglement", "--circuit", spec, "--samples", "50", "--measure", "scott"},
        {"spectrum", "--circuit", spec, "--samples", "20", "--bins", "30"},
        {"train", "--circuit", spec, "--steps", "15", "--restarts", "2"},
        {"landscape", "--circuit", spec, "--steps", "10", "--points", "5", "--basis", "pca"},
        {"landscape", "--circuit", spec, "--theta", "0.1,0.2,0.3,0.4,0.5,0.6", "--points", "5", "--metric",
         "samples", "--shots", "64"},
        {"path", "--circuit", spec, "--steps", "12", "--restarts", "3", "--overlay", "--points", "5"},
        {"path", "--circuit", spec, "--steps", "12", "--restarts", "2", "--mode", "tsne"},
        {"histogram", "--circuit", spec, "--steps", "5", "--members", "4", "--bins", "6"},
        {"reachability", "--circuit", spec, "--steps", "10", "--restarts", "2", "--haar-samples", "50"},
        {"qaoa", "--nodes", "4", "--edges", "4", "--p", "1", "--restarts", "3", "--steps", "20", "--points", "5"},
    };
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string first_report;
        for (int rep = 0; rep < 2; ++rep) {
            auto args = commands[i];
            const auto out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
            args.insert(args.end(), {"--seed", "5", "--out", out.string()});
            const auto r = run(args);
            INFO(commands[i][0] << ": " << r.err);
            REQUIRE(r.code == 0);
            check_artifacts(out);
            const auto j = read_report(out);
            CHECK(j["command"] == commands[i][0]);
            CHECK(j["seed"] == 5);
            for (const auto &a : j["artifacts"]) {
                const auto name = a.get<std::string>();
                if (name.ends_with(".svg")) CHECK(slurp(out / name).find("seed=5") != std::string::npos);
                if (name.ends_with(".csv")) CHECK(slurp(out / name).find(',') != std::string::npos);
            }
            if (rep == 0)
                first_report = slurp(out / "report.json");
            else
                CHECK(slurp(out / "report.json") == first_report);
        }
    }
}

TEST_CASE("QAOA outputs") {
    const auto dir = scratch("qaoa");
    const auto out = dir / "out";
    REQUIRE(run({"qaoa", "--nodes", "3", "--edges", "3", "--p", "1", "--restarts", "5", "--steps", "100",
                 "--points", "7", "--seed", "1", "--out", out.string()})
                .code == 0);
    for (int r = 0; r < 5; ++r) CHECK(fs::exists(out / ("trace_" + std::to_string(r) + ".csv")));
    CHECK(fs::exists(out / "landscape.csv"));
    CHECK(fs::exists(out / "path.svg"));
    const auto j = read_report(out);
    CHECK(j["max_cut"] == 2);
    CHECK(j["best_mean_cut"].get<double>() >= 1.95);
    CHECK(j["traces"].size() == 5);

    const auto csv = slurp(out / "trace_0.csv");
    CHECK(csv.starts_with("step,loss,theta_0,theta_1\n"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
    const auto grid = slurp(out / "landscape.csv");
    CHECK(grid.starts_with("phi0,phi1,value\n"));
    CHECK(std::count(grid.begin(), grid.end(), '\n') == 50);
}

TEST_CASE("exit codes") {
    const auto dir = scratch("codes");
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"expressibility"}).code == 2);
    CHECK(run({"expressibility", "--circuit", "x.json", "--samples", "many"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    const auto missing = run({"expressibility", "--circuit", (dir / "absent.json").string()});
    CHECK(missing.code == 3);
    CHECK(missing.err.find("absent.json") != std::string::npos);

    std::ofstream(dir / "broken.json") << "{\"n_qubits\": 1, \"gates\": [";
    CHECK(run({"expressibility", "--circuit", (dir / "broken.json").string()}).code == 3);
    std::ofstream(dir / "bad_gate.json") << R"({"n_qubits": 1, "gates": [{"kind": "T", "targets": [0]}]})";
    CHECK(run({"entanglement", "--circuit", (dir / "bad_gate.json").string()}).code == 3);

    const auto spec = write_spec(dir, "nocost.json", mz_entangler_circuit()).string();
    CHECK(run({"train", "--circuit", spec, "--out", (dir / "o").string()}).code == 3);
    CHECK(run({"expressibility", "--circuit", spec, "--measure", "scott"}).code == 2);
    CHECK(run({"train", "--circuit", spec, "--optimizer", "sgd"}).code == 2);

    std::ofstream(dir / "huge.json") << R"({"n_qubits": 1, "parameters": ["a"],
        "gates": [{"kind": "RX", "targets": [0], "angle": {"param": "a"}}],
        "cost": [{"coeff": 1.5e308, "paulis": {"0": "Z"}}, {"coeff": 1.5e308, "paulis": {"0": "Z"}}]})";
    const auto diverged =
        run({"train", "--circuit", (dir / "huge.json").string(), "--init", "zeros", "--out", (dir / "o2").string()});
    CHECK(diverged.code == 4);
    CHECK_FALSE(diverged.err.empty());
    CHECK_FALSE(fs::exists(dir / "o2" / "report.json"));
}
