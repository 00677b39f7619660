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

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/applications.hpp"

namespace casimir::cli {

enum class Mode { Construct, Dirac, Nonholonomic, Kernel, Jacobian, Fixture };
enum class Format { Human, Machine };

std::string mode_name(Mode m);

/// Malformed problem file or arguments. Line and column are 1-based, 0 when unknown.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// In-memory problem definition. Which fields are meaningful depends on the mode:
///   construct    omega0 | theta0+Theta0, casimirs, k, sigma, tau (odd)
///   dirac        omega0, constraints
///   nonholonomic hamiltonian, zeta (chart is q¹..qⁿ, p₁..p_n)
///   kernel       omega0, kernel, sigma
///   jacobian     optional omega0 | theta0+Theta0 for the volume, casimirs, coefficient
///   fixture      fixture
/// `bivector` is the candidate examined by `verify`; the expected_* fields are
/// reference data compared after construction.
struct ProblemFile {
    Mode mode = Mode::Construct;
    std::string name;
    ChartPtr chart;
    std::optional<Form> omega0;
    std::optional<Form> theta0;
    std::optional<Form> Theta0;
    std::vector<ScalarField> casimirs;
    std::optional<int> k;
    std::optional<Form> sigma;
    std::optional<Form> tau;
    std::vector<ScalarField> constraints;
    std::optional<ScalarField> hamiltonian;
    std::vector<Form> zeta;
    std::vector<Form> kernel;
    std::optional<ScalarField> coefficient;
    std::optional<Multivector> bivector;
    std::string fixture;
    std::vector<BracketEntry> expected;
    std::optional<ScalarField> expected_f;
    std::optional<ScalarField> expected_g;
    std::optional<std::size_t> expected_rank;

    bool is_odd() const { return theta0.has_value(); }
};

bool operator==(const ProblemFile& a, const ProblemFile& b);

/// Throws InputError with the line and column of the offending text.
ProblemFile parse_problem(std::string_view text);
ProblemFile read_problem(const std::string& path);
/// Deterministic JSON; parse_problem(emit_problem(p)) == p.
std::string emit_problem(const ProblemFile& problem);
/// A construct-mode file carrying the fixture's data and reference table.
ProblemFile problem_from_fixture(const Fixture& fx);

struct TableRow {
    std::string i;
    std::string j;
    std::string value;
};

struct BracketTable {
    std::vector<TableRow> rows;
    std::optional<std::string> f;
    std::optional<std::string> g;
    std::size_t rank = 0;
};

BracketTable make_table(const Multivector& bivector);

/// One verification line. Items with decides = false are reported only.
struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
    bool decides = true;
};

struct Report {
    std::string problem;
    std::string mode;
    std::optional<BracketTable> table;
    std::vector<CheckItem> checks;
    std::vector<std::string> notes;
    bool passed() const;
};

/// Builds the bracket and runs the verification bundle.
Report cmd_construct(const ProblemFile& problem, CheckLevel level = CheckLevel::Full);
/// Verification bundle only; the table is never produced.
Report cmd_verify(const ProblemFile& problem, CheckLevel level = CheckLevel::Full);

std::string render(const Report& report, Format format);

struct FixtureFiles {
    /// File-name stem: the fixture name with non-alphanumerics replaced by '_'.
    std::string stem;
    std::string problem;
    std::string expected;
};
/// Throws InputError listing the available fixtures for unknown names.
FixtureFiles cmd_fixture(const std::string& name);

/// Command-line entry point. Exit codes: 0 success, 1 verification failure, 2 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
