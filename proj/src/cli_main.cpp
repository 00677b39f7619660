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

#include <filesystem>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "casimir/cli.hpp"

namespace casimir::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bracket construction and verification from Casimir data"};
    app.name("casimir");
    app.require_subcommand(1);
    std::string format = "human";
    std::string level = "full";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--check-level", level, "fast: Casimirs and rank; full: adds Jacobi triples and the δ-condition")
        ->check(CLI::IsMember({"fast", "full"}));

    std::string file;
    auto* construct = app.add_subcommand("construct", "Build the bracket table and verify it");
    construct->add_option("file", file, "Problem file")->required();
    construct->fallthrough();
    auto* verify = app.add_subcommand("verify", "Run the verification bundle only");
    verify->add_option("file", file, "Problem file")->required();
    verify->fallthrough();
    std::vector<std::string> name_parts;
    std::string out_dir;
    auto* fixture_cmd = app.add_subcommand("fixture", "Write a fixture's problem file and expected table");
    fixture_cmd->add_option("name", name_parts, "Fixture name, e.g. toda3, \"toda 3\", gl3")->required();
    fixture_cmd->add_option("--out", out_dir, "Output directory");
    fixture_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const Format fmt = format == "machine" ? Format::Machine : Format::Human;
    const CheckLevel lvl = level == "fast" ? CheckLevel::Fast : CheckLevel::Full;
    try {
        if (*fixture_cmd) {
            std::string name;
            for (const auto& part : name_parts) name += (name.empty() ? "" : " ") + part;
            FixtureFiles files = cmd_fixture(name);
            if (out_dir.empty()) {
                out << files.problem;
                return 0;
            }
            std::filesystem::path dir(out_dir);
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec) throw InputError("cannot create '" + out_dir + "': " + ec.message());
            write_file(dir / (files.stem + ".json"), files.problem);
            write_file(dir / (files.stem + ".expected.json"), files.expected);
            out << (dir / (files.stem + ".json")).string() << "\n"
                << (dir / (files.stem + ".expected.json")).string() << "\n";
            return 0;
        }
        ProblemFile problem = read_problem(file);
        Report report = *construct ? cmd_construct(problem, lvl) : cmd_verify(problem, lvl);
        out << render(report, fmt);
        return report.passed() ? 0 : 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

}  // namespace casimir::cli
