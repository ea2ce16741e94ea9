// Copyright 2026 The qdiff Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qdiff/render.hpp"
#include "qdiff/report.hpp"
#include "qdiff/simulator.hpp"
#include "test_support.hpp"

using namespace qdiff;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string &stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string circuit_path(const std::string &name) {
    return std::string(QDIFF_CIRCUITS_DIR) + "/" + name;
}

nlohmann::json final_probabilities(const std::string &report) {
    return nlohmann::json::parse(report)["layers"].back()["probabilities"];
}

std::size_t count(const std::string &text, const std::string &needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST(Report, SingleHadamard) {
    const auto r = run({"simulate", R"j({"wires":1,"cols":[["H"]]})j"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], kSchemaVersion);
    ASSERT_EQ(j["layers"].size(), 2U);
    const auto p = j["layers"][1]["probabilities"];
    EXPECT_NEAR(p[0].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(p[1].get<double>(), 0.5, 1e-15);
    EXPECT_EQ(j["layers"][0]["annotation"]["type"], "butterfly");
    EXPECT_TRUE(j["layers"][1]["annotation"].is_null());
    EXPECT_TRUE(j["layers"][1]["gate_layer"].is_null());
    EXPECT_EQ(j["n"], 1);
    EXPECT_EQ(j["K"], 0);
}

TEST(Report, TopLevelKeyOrder) {
    const auto j = build_report(parse_circuit(R"j({"wires":2,"cols":[["H"]]})j"), {});
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    const std::vector<std::string> want{"schema_version", "circuit", "source_circuit", "n", "K",
                                        "grid",           "options", "layers",         "half_matrix",
                                        "warnings"};
    EXPECT_EQ(keys, want);
}

TEST(Report, GroverMarkedState) {
    const auto r = run({"simulate", circuit_path("grover3.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto p = final_probabilities(r.out);
    EXPECT_NEAR(p[5].get<double>(), 25.0 / 32.0, 1e-9);
    for (int k = 0; k < 8; ++k) {
        if (k != 5) {
            EXPECT_NEAR(p[static_cast<std::size_t>(k)].get<double>(), 1.0 / 32.0, 1e-9);
        }
    }
}

TEST(Report, WFour) {
    const auto r = run({"simulate", circuit_path("w4.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto p = final_probabilities(r.out);
    for (int k = 0; k < 16; ++k) {
        const bool one_hot = k == 1 || k == 2 || k == 4 || k == 8;
        EXPECT_NEAR(p[static_cast<std::size_t>(k)].get<double>(), one_hot ? 0.25 : 0.0, 1e-9);
    }
    // Dense oracle agrees with the report's amplitudes.
    const auto want = qdiff::test::dense_final_state(
        parse_circuit_source(R"j({"wires":4,"cols":[["H"],["-","H"],["C","C","-","X"],["X","-","-","C"],["-","X","-","C"],["A","A","X","A"]]})j"));
    const auto amps = nlohmann::json::parse(r.out)["layers"].back()["amplitudes"];
    for (Eigen::Index k = 0; k < 16; ++k) {
        const cplx a(amps[static_cast<std::size_t>(k)][0].get<double>(),
                     amps[static_cast<std::size_t>(k)][1].get<double>());
        EXPECT_LT(std::abs(a - want(k)), 1e-10);
    }
}

TEST(Report, AmplitudesRoundTripExactly) {
    qdiff::test::CircuitGen gen(8);
    const auto c = gen.random_circuit(3, 10, false);
    const auto states = simulate(c);
    const auto j = nlohmann::json::parse(dump_report(build_report(c, {})));
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto &amps = j["layers"][k]["amplitudes"];
        for (Index i = 0; i < states[k].size(); ++i) {
            EXPECT_EQ(amps[i][0].get<double>(), states[k][i].real());
            EXPECT_EQ(amps[i][1].get<double>(), states[k][i].imag());
        }
    }
}

TEST(Report, UnsupportedLayersHaveNullAnnotation) {
    const auto r = run({"simulate", R"j({"wires":2,"cols":[["RX(0.3)"],["X","X"],["H"]]})j"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["layers"][0]["annotation"].is_null());
    EXPECT_FALSE(j["layers"][0]["unsupported_reason"].is_null());
    EXPECT_TRUE(j["layers"][1]["annotation"].is_null());
    EXPECT_FALSE(j["layers"][2]["annotation"].is_null());
    EXPECT_TRUE(j["layers"][2]["unsupported_reason"].is_null());
}

TEST(Report, OptionsAndLayout) {
    const auto r = run({"simulate", circuit_path("w4.json"), "--layout", "1", "--bars", "log",
                        "--decades", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["K"], 1);
    EXPECT_EQ(j["grid"]["rows"], 8);
    EXPECT_EQ(j["grid"]["cols"], 2);
    EXPECT_EQ(j["options"]["bars"], "log");
    EXPECT_EQ(j["options"]["decades"], 3);
    const auto bars = j["layers"].back()["bar_lengths"];
    EXPECT_NEAR(bars[1].get<double>(), 1 + std::log10(0.25) / 3, 1e-12);
    EXPECT_EQ(bars[0].get<double>(), 0.0);
    EXPECT_EQ(j["half_matrix"]["cells"].size(), 6U);
}

TEST(Report, ExpandBeforeSimulating) {
    const auto r = run({"simulate", circuit_path("rotations.json"), "--expand", "generalized"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const auto &layer : j["layers"]) {
        if (!layer["gate_layer"].is_null()) {
            EXPECT_FALSE(layer["annotation"].is_null());
        }
    }
    EXPECT_NE(j["circuit"], j["source_circuit"]);
}

TEST(Cli, InvalidInputExitsOne) {
    auto r = run({"simulate", R"j({"wires":1,"cols":[["Q"]]})j"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("error"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    r = run({"simulate", R"j({"wires":17,"cols":[]})j"});
    EXPECT_EQ(r.code, 1);
    r = run({"simulate", "/nonexistent/file.json"});
    EXPECT_EQ(r.code, 1);
    r = run({"validate", R"j({"wires":2,"cols":[["SWAP","-"]]})j"});
    EXPECT_EQ(r.code, 1);
    r = run({"bogus"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, NormDriftIsReported) {
    Eigen::Vector2cd v(1.0, 1.0); // squared norm 2
    const StateVector drifted(StateVector::unchecked, 1, v);
    EXPECT_THROW(check_norm(drifted, 0), NormDriftError);
    EXPECT_NO_THROW(check_norm(StateVector::zero(1), 0));
}

TEST(Cli, ExpandGeneralizedRz) {
    const auto r = run({"expand", R"j({"wires":1,"cols":[["RZ(0.5)"]]})j", "--generalized", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto c = parse_circuit(r.out);
    ASSERT_EQ(c.depth(), 1U);
    EXPECT_EQ(c.layers[0].gates[0].gate, Gate::of(GateKind::ZG, -0.25, 0.25));
}

TEST(Cli, ExpandAllCoreIsByteIdentical) {
    const std::string canon = R"j({"wires":3,"cols":[["H","-","-"],["C","X","A"],["ZG(1,2)","-","-"]]})j";
    ASSERT_EQ(serialize_circuit(parse_circuit(canon)), canon);
    for (const auto &mode : {"basic", "generalized"}) {
        const auto r = run({"expand", canon, "--mode", mode, "--verify"});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(r.out, canon + "\n");
    }
}

TEST(Cli, ExpandRyBasicDepth) {
    const auto r = run({"expand", R"j({"wires":3,"cols":[["H"],["-","RY(0.3)"],["-","C","X"]]})j"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_circuit(r.out).depth(), 3U + 7U);
}

TEST(Cli, ExpandKeepGlobalPhaseFalse) {
    auto r = run({"expand", R"j({"wires":1,"cols":[["RX(0.5)"]]})j", "--keep-global-phase",
                  "false", "--verify"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(parse_circuit(r.out).depth(), 3U);
    r = run({"expand", R"j({"wires":2,"cols":[["RX(0.5)","C"]]})j", "--keep-global-phase", "false"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_circuit(r.out).depth(), 4U);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, ExpandQueryOutput) {
    const auto r = run({"expand", circuit_path("rotations.json"), "--query"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("circuit=", 0), 0U);
    const auto c = parse_circuit_source(r.out.substr(0, r.out.size() - 1));
    EXPECT_GT(c.depth(), 3U);
}

TEST(Cli, InputForms) {
    const std::string text = R"j({"wires":2,"cols":[["H"],["C","X"]]})j";
    const auto from_arg = run({"simulate", text});
    const auto from_stdin = run({"simulate", "-"}, text);
    const auto from_query = run({"simulate", to_query_string(parse_circuit(text))});
    const auto path = std::filesystem::temp_directory_path() / "qdiff_input_forms.json";
    std::ofstream(path) << text;
    const auto from_file = run({"simulate", path.string()});
    std::filesystem::remove(path);
    ASSERT_EQ(from_arg.code, 0);
    EXPECT_EQ(from_stdin.out, from_arg.out);
    EXPECT_EQ(from_query.out, from_arg.out);
    EXPECT_EQ(from_file.out, from_arg.out);
}

TEST(Cli, ValidatePrintsCanonical) {
    const auto r = run({"validate", R"j({"wires":1,"cols":[["P(120deg)"]]})j"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"wires\":1,\"cols\":[[\"P(2.0943951023931953)\"]]}\n");
}

TEST(Cli, DeterministicOutput) {
    for (const auto &cmd : {"simulate", "render"}) {
        const auto first = run({cmd, circuit_path("hadamard_cancel.json")});
        ASSERT_EQ(first.code, 0);
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(run({cmd, circuit_path("hadamard_cancel.json")}).out, first.out);
        }
    }
}

TEST(Render, GroupsAndArcs) {
    const auto c = parse_circuit(R"j({"wires":2,"cols":[["H"],["Z","C"],["SWAP","SWAP"]]})j");
    const auto svg = render_svg(c, {});
    EXPECT_EQ(svg.rfind("<?xml", 0), 0U);
    EXPECT_EQ(count(svg, "<svg "), 1U);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(count(svg, "<g class=\"layer\""), c.depth() + 1);
    const auto arc = svg.find("class=\"rotation-arc\"");
    ASSERT_NE(arc, std::string::npos);
    EXPECT_NE(svg.substr(arc, svg.find('>', arc) - arc).find("data-color=\"green\""),
              std::string::npos);
    EXPECT_NE(svg.find("class=\"swap-arrow\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"butterfly-op\""), std::string::npos);
}

TEST(Render, RefusesNineQubits) {
    Circuit c{9, {}};
    EXPECT_THROW((void)render_svg(c, {}), ValidationError);
    const auto r = run({"render", R"j({"wires":9,"cols":[["H"]]})j"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("8 qubits"), std::string::npos);
}

TEST(Render, WritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "qdiff_render_test.svg";
    const auto r = run({"render", circuit_path("w4.json"), "-o", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::filesystem::remove(path);
    EXPECT_EQ(ss.str(), render_svg(parse_circuit_source(R"j({"wires":4,"cols":[["H"],["-","H"],["C","C","-","X"],["X","-","-","C"],["-","X","-","C"],["A","A","X","A"]]})j"), {}));
}
