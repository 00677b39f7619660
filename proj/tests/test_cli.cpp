/*
   Copyright 2026 The casimir Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casimir/cli.hpp"

using namespace casimir;
using namespace casimir::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "casimir");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("casimir_cli_" + std::to_string(std::rand()) + "_" +
                                            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

const char* kToda3Bivector = R"({
  "name": "toda3 bivector",
  "coordinates": ["a1", "a2", "a3", "b1", "b2", "b3"],
  "structure": {"omega0": "darboux"},
  "casimirs": ["b1 + b2 + b3", "a1*a2*a3"],
  "k": 2,
  "bivector": [
    {"coeff": "a1", "basis": ["a1", "b1"]}, {"coeff": "-a1", "basis": ["a1", "b2"]},
    {"coeff": "a2", "basis": ["a2", "b2"]}, {"coeff": "-a2", "basis": ["a2", "b3"]},
    {"coeff": "a3", "basis": ["a3", "b3"]}, {"coeff": "-a3", "basis": ["a3", "b1"]}
  ]
})";

}  // namespace

TEST_CASE("fixture problem files round-trip") {
    for (const char* name : {"toda3", "toda4", "volterra_companion3", "volterra_companion4", "gl3", "r3_jacobian",
                             "r3_jacobian(x*y/(1 + z^2) + z)"}) {
        CAPTURE(name);
        ProblemFile p = problem_from_fixture(fixture(name));
        std::string text = emit_problem(p);
        ProblemFile q = parse_problem(text);
        CHECK(q == p);
        CHECK(emit_problem(q) == text);
    }
}

TEST_CASE("hand-written files in every mode round-trip") {
    const char* files[] = {
        R"({"mode": "dirac", "coordinates": ["q1","q2","p1","p2"], "structure": {"omega0": "darboux"},
            "constraints": ["q2", "p2"]})",
        R"({"mode": "nonholonomic", "coordinates": ["q1","q2","q3","p1","p2","p3"],
            "hamiltonian": "(p1^2 + p2^2 + p3^2)/2",
            "zeta": [[{"coeff": "1", "basis": ["q3"]}, {"coeff": "-q1", "basis": ["q2"]}]]})",
        R"({"mode": "kernel", "coordinates": ["q1","q2","p1","p2"], "structure": {"omega0": "darboux"},
            "kernel": [[{"basis": ["q2"]}], [{"basis": ["p2"]}]],
            "sigma": [{"coeff": "1", "basis": ["q1", "p1"]}]})",
        R"({"mode": "jacobian", "coordinates": ["x","y","z"], "casimirs": ["x^2 + y^2 + z^2"],
            "coefficient": "1", "expected": {"table": [{"i": "y", "j": "x", "value": "-2*z"}]}})",
        R"({"mode": "fixture", "fixture": "toda 3"})",
        kToda3Bivector,
    };
    for (const char* text : files) {
        CAPTURE(text);
        ProblemFile p = parse_problem(text);
        CHECK(parse_problem(emit_problem(p)) == p);
    }
    // Rows with i > j are stored antisymmetrically.
    ProblemFile j = parse_problem(files[3]);
    REQUIRE(j.expected.size() == 1);
    CHECK(j.expected[0].i == 0);
    CHECK(j.expected[0].value == parse_expression("2*z", *j.chart));
}

TEST_CASE("construct: bracket tables") {
    Report toda = cmd_construct(parse_problem(R"({"mode": "fixture", "fixture": "toda3"})"));
    CHECK(toda.passed());
    REQUIRE(toda.table);
    CHECK(toda.table->rows.size() == 6);
    CHECK(toda.table->rows[0].i == "a1");
    CHECK(toda.table->rows[0].j == "b1");
    CHECK(toda.table->rows[0].value == "a1");
    CHECK(toda.table->f == std::optional<std::string>("-a1*a2 - a1*a3 - a2*a3"));

    Report gl = cmd_construct(parse_problem(R"({"mode": "fixture", "fixture": "gl3"})"));
    REQUIRE(gl.table);
    CHECK(gl.table->rows.size() == 15);
    CHECK(gl.passed());
    // The f comparison against the stored reference is informational.
    bool f_line = false;
    for (const auto& c : gl.checks)
        if (c.name == "f = reference f") {
            f_line = true;
            CHECK_FALSE(c.decides);
            CHECK_FALSE(c.passed);
        }
    CHECK(f_line);
}

TEST_CASE("construct: failing δ-condition exits 1 naming the identity") {
    TempDir tmp;
    ProblemFile p = problem_from_fixture(fixture("toda3"));
    p.sigma = *p.sigma * parse_expression("1 + b1", *p.chart);
    p.expected.clear();
    Run r = invoke({"construct", tmp.write("bad.json", emit_problem(p))});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "FAIL  2σ∧δσ = δ(σ∧σ)"));
    CHECK(contains(r.out, "result: FAIL"));
}

TEST_CASE("verify: bivector input, mutation, and odd line items") {
    TempDir tmp;
    Run ok = invoke({"verify", tmp.write("t.json", kToda3Bivector)});
    CHECK(ok.code == 0);
    CHECK_FALSE(contains(ok.out, "brackets:"));
    CHECK_FALSE(contains(ok.out, "FAIL"));

    std::string mutated = kToda3Bivector;
    mutated.replace(mutated.find(R"("coeff": "-a3")"), 14, R"("coeff": "-a3*b2")");
    Run bad = invoke({"verify", tmp.write("m.json", mutated)});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "first failing triple ("));

    Run fast = invoke({"verify", "--check-level", "fast", tmp.write("m2.json", mutated)});
    CHECK_FALSE(contains(fast.out, "Jacobi identity"));

    Run odd = invoke({"verify", tmp.write("gl3.json", cmd_fixture("gl3").problem)});
    CHECK(odd.code == 0);
    for (const char* item : {"σ semi-basic", "τ semi-basic", "τ(X_{f_i}) = 0", "σ(X_{f_i},·) + ⟨df_i,E₀⟩τ = 0",
                             "suspended condition", "semi-basic equation 2σ∧δσ = δ(σ∧σ)"})
        CHECK(contains(odd.out, item));
}

TEST_CASE("modes: Dirac passes, nonholonomic fails Jacobi") {
    Report d = cmd_construct(parse_problem(R"({"mode": "dirac", "coordinates": ["q1","q2","q3","p1","p2","p3"],
        "structure": {"omega0": "darboux"}, "constraints": ["q3", "p3"]})"));
    CHECK(d.passed());
    Report nh = cmd_construct(parse_problem(R"({"mode": "nonholonomic",
        "coordinates": ["q1","q2","q3","p1","p2","p3"], "hamiltonian": "(p1^2 + p2^2 + p3^2)/2",
        "zeta": [[{"coeff": "1", "basis": ["q3"]}, {"coeff": "-q1", "basis": ["q2"]}]]})"));
    CHECK_FALSE(nh.passed());
    for (const auto& c : nh.checks) {
        if (contains(c.name, "Jacobi")) CHECK_FALSE(c.passed);
        if (contains(c.name, "kernel")) CHECK(c.passed);
        if (contains(c.name, "g = ")) CHECK(c.passed);
    }
    Report j = cmd_construct(parse_problem(R"({"mode": "jacobian", "coordinates": ["x","y","z"],
        "casimirs": ["x^2 + y^2 + z^2"]})"));
    CHECK(j.passed());
    REQUIRE(j.table);
    CHECK(j.table->rows.size() == 3);
    CHECK(j.table->rows[0].value == "2*z");
}

TEST_CASE("machine output is deterministic JSON") {
    TempDir tmp;
    std::string file = tmp.write("g.json", cmd_fixture("gl3").problem);
    Run a = invoke({"construct", file, "--format", "machine"});
    Run b = invoke({"--format", "machine", "construct", file});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["passed"] == true);
    CHECK(j["table"].size() == 15);
    CHECK(j["g"] == "y1 + y2 + y3");
}

TEST_CASE("fixture command") {
    TempDir tmp;
    Run r = invoke({"fixture", "toda", "3", "--out", tmp.path.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(tmp.path / "toda3.json"));
    CHECK(fs::exists(tmp.path / "toda3.expected.json"));
    Run c = invoke({"construct", (tmp.path / "toda3.json").string()});
    CHECK(c.code == 0);
    CHECK(contains(c.out, "{a3, b1} = -a3"));

    CHECK(invoke({"fixture", "gl3"}).out == cmd_fixture("gl3").problem);
    CHECK(cmd_fixture("r3_jacobian").stem == "r3_jacobian_x_2_y_2_z_2");

    Run bad = invoke({"fixture", "kepler"});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "toda(n)"));
    CHECK(contains(bad.err, "gl3"));
}

TEST_CASE("input errors carry positions and exit 2") {
    try {
        parse_problem("{\n  \"coordinates\": [\"x\", \"y\"\n  \"k\": 1\n}");
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 3);
    }
    try {
        parse_problem("{\"mode\": \"jacobian\",\n \"coordinates\": [\"x\",\"y\",\"z\"],\n \"casimirs\": [\"x + w\"]}");
        FAIL("no error");
    } catch (const InputError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 20);
        CHECK(contains(e.what(), "unknown coordinate 'w'"));
    }
    CHECK_THROWS_AS(parse_problem(R"({"coordinates": ["x","y"], "structure": {"theta0": [], "Theta0": []}})"),
                    InputError);
    CHECK_THROWS_AS(parse_problem(R"({"coordinates": ["x","y"], "sigmaa": []})"), InputError);
    CHECK_THROWS_AS(parse_problem(R"({"coordinates": ["x","y"], "dimension": 3})"), InputError);
    CHECK_THROWS_AS(parse_problem(R"({"mode": "dirac", "coordinates": ["x","y"], "structure": {"omega0": "darboux"}})"),
                    InputError);
    CHECK_THROWS_AS(parse_problem(R"({"coordinates": ["q","p"], "structure": {"omega0": "darboux"}, "k": 1,
        "sigma": [{"coeff": "1", "basis": ["q"]}]})"),
                    InputError);

    TempDir tmp;
    Run degenerate = invoke({"construct", tmp.write("d.json", R"({"coordinates": ["q","p"],
        "structure": {"omega0": []}, "k": 1, "sigma": []})")});
    CHECK(degenerate.code == 2);
    CHECK(contains(degenerate.err, "error:"));
    CHECK(invoke({"construct", (tmp.path / "missing.json").string()}).code == 2);
    CHECK(invoke({"construct"}).code == 2);
    CHECK(invoke({"--format", "xml", "fixture", "gl3"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}
