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

#include "casimir/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace casimir::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string with_position(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

const std::pair<Mode, const char*> kModes[] = {{Mode::Construct, "construct"}, {Mode::Dirac, "dirac"},
                                               {Mode::Nonholonomic, "nonholonomic"}, {Mode::Kernel, "kernel"},
                                               {Mode::Jacobian, "jacobian"}, {Mode::Fixture, "fixture"}};

}  // namespace

std::string mode_name(Mode m) {
    for (auto [mode, name] : kModes)
        if (mode == m) return name;
    return "construct";
}

InputError::InputError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(with_position(what, line, column)), line_(line), column_(column) {}

// ------------------------------------------------------------ problem file

namespace {

struct Position {
    std::size_t line = 0;
    std::size_t column = 0;
};

Position position_at(std::string_view text, std::size_t offset) {
    Position p{1, 1};
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
            ++p.column;
        }
    }
    return p;
}

// Strips the " (column N)" suffix that ParseError appends.
std::string bare_message(const ParseError& e) {
    std::string m = e.what();
    auto at = m.rfind(" (column ");
    return at == std::string::npos ? m : m.substr(0, at);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& path, const std::string& msg, const std::string& needle = {}) const {
        Position p;
        if (!needle.empty()) {
            auto at = text_.find(needle);
            if (at != std::string_view::npos) p = position_at(text_, at);
        }
        throw InputError(path + ": " + msg, p.line, p.column);
    }

    [[noreturn]] void fail_key(const std::string& path, const std::string& key, const std::string& msg) const {
        fail(path, msg, "\"" + key + "\"");
    }

    std::string string_at(const json& j, const std::string& path) const {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_integer()) return j.dump();
        fail(path, "expected a string");
    }

    ScalarField expression(const json& j, const ChartPtr& chart, const std::string& path) const {
        std::string s = string_at(j, path);
        try {
            return parse_expression(s, *chart);
        } catch (const ParseError& e) {
            Position p;
            std::string quoted = json(s).dump();
            auto at = text_.find(quoted);
            if (at != std::string_view::npos) {
                p = position_at(text_, at + 1);
                p.column += e.column() - 1;
            }
            throw InputError(path + ": " + bare_message(e) + " in \"" + s + "\"", p.line, p.column);
        } catch (const MathError& e) {
            fail(path, e.what(), json(s).dump());
        }
    }

    template <TensorKind K>
    Tensor<K> terms(const json& j, const ChartPtr& chart, int grade, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected a list of {\"coeff\", \"basis\"} terms");
        Tensor<K> t(chart, grade);
        for (std::size_t n = 0; n < j.size(); ++n) {
            const json& term = j[n];
            std::string at = path + "[" + std::to_string(n) + "]";
            if (!term.is_object()) fail(at, "expected an object with \"coeff\" and \"basis\"");
            for (const auto& [key, value] : term.items())
                if (key != "coeff" && key != "basis") fail_key(at, key, "unknown key '" + key + "'");
            if (!term.contains("basis") || !term["basis"].is_array()) fail(at, "missing \"basis\" list");
            const json& basis = term["basis"];
            if (static_cast<int>(basis.size()) != grade)
                fail(at, "basis has " + std::to_string(basis.size()) + " entries, expected " + std::to_string(grade));
            std::vector<std::size_t> idx;
            for (const auto& b : basis) {
                std::string name = string_at(b, at + ".basis");
                if (!chart->contains(name)) fail(at + ".basis", "unknown coordinate '" + name + "'", json(name).dump());
                idx.push_back(chart->index_of(name));
            }
            if (std::set<std::size_t>(idx.begin(), idx.end()).size() != idx.size())
                fail(at + ".basis", "repeated coordinate in basis");
            ScalarField c = term.contains("coeff") ? expression(term["coeff"], chart, at + ".coeff") : ScalarField(1);
            t += Tensor<K>::basis(chart, idx, c);
        }
        return t;
    }

    std::vector<ScalarField> expressions(const json& j, const ChartPtr& chart, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected a list of expressions");
        std::vector<ScalarField> out;
        for (std::size_t n = 0; n < j.size(); ++n)
            out.push_back(expression(j[n], chart, path + "[" + std::to_string(n) + "]"));
        return out;
    }

    std::vector<Form> form_list(const json& j, const ChartPtr& chart, int grade, const std::string& path) const {
        if (!j.is_array()) fail(path, "expected a list of term lists");
        std::vector<Form> out;
        for (std::size_t n = 0; n < j.size(); ++n)
            out.push_back(terms<TensorKind::Form>(j[n], chart, grade, path + "[" + std::to_string(n) + "]"));
        return out;
    }

private:
    std::string_view text_;
};

const std::set<std::string> kTopKeys = {"name",   "mode",        "dimension",   "coordinates", "structure",
                                        "casimirs", "k",         "sigma",       "tau",         "constraints",
                                        "hamiltonian", "zeta",   "kernel",      "coefficient", "bivector",
                                        "fixture", "expected"};

void check_mode_fields(const Reader& r, const ProblemFile& p, const json& j) {
    auto need = [&](bool ok, const char* what) {
        if (!ok) r.fail(mode_name(p.mode), std::string("mode requires ") + what);
    };
    auto forbid = [&](const char* key) {
        if (j.contains(key)) r.fail_key(mode_name(p.mode), key, std::string("mode does not use \"") + key + "\"");
    };
    const bool structure = p.omega0 || p.theta0;
    switch (p.mode) {
    case Mode::Construct:
        need(structure, "a structure");
        need(p.k.has_value(), "\"k\"");
        need(p.sigma || p.bivector, "\"sigma\" (or a \"bivector\" to verify)");
        if (!p.is_odd()) forbid("tau");
        break;
    case Mode::Dirac:
        need(p.omega0.has_value(), "an even structure");
        need(!p.constraints.empty(), "\"constraints\"");
        break;
    case Mode::Nonholonomic:
        forbid("structure");
        need(p.hamiltonian.has_value(), "\"hamiltonian\"");
        need(!p.zeta.empty(), "\"zeta\"");
        if (p.chart->dim() % 2) r.fail("coordinates", "nonholonomic mode needs (q¹..qⁿ, p₁..p_n)");
        break;
    case Mode::Kernel:
        need(p.omega0.has_value(), "an even structure");
        need(!p.kernel.empty(), "\"kernel\"");
        need(p.sigma.has_value(), "\"sigma\"");
        break;
    case Mode::Jacobian:
        need(p.casimirs.size() + 2 == p.chart->dim(), "dimension - 2 casimirs");
        break;
    case Mode::Fixture:
        break;
    }
    if (p.mode != Mode::Construct && p.mode != Mode::Jacobian) forbid("casimirs");
    if (p.mode != Mode::Construct) forbid("k");
    if (p.mode != Mode::Construct && p.mode != Mode::Kernel) forbid("sigma");
    if (p.mode != Mode::Construct) forbid("tau");
    if (p.mode != Mode::Dirac) forbid("constraints");
    if (p.mode != Mode::Nonholonomic) {
        forbid("hamiltonian");
        forbid("zeta");
    }
    if (p.mode != Mode::Kernel) forbid("kernel");
    if (p.mode != Mode::Jacobian) forbid("coefficient");
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        Position p = position_at(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string m = e.what();
        auto at = m.find("] ");
        if (at != std::string::npos) m = m.substr(at + 2);
        throw InputError("invalid JSON: " + m, p.line, p.column);
    }
    Reader r(text);
    if (!j.is_object()) r.fail("document", "expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kTopKeys.count(key)) r.fail_key("document", key, "unknown key '" + key + "'");

    ProblemFile p;
    if (j.contains("name")) p.name = r.string_at(j["name"], "name");
    std::string mode = j.contains("mode") ? r.string_at(j["mode"], "mode") : "construct";
    bool known = false;
    for (auto [m, name] : kModes)
        if (mode == name) {
            p.mode = m;
            known = true;
        }
    if (!known) r.fail("mode", "unknown mode '" + mode + "'", json(mode).dump());

    if (p.mode == Mode::Fixture) {
        for (const auto& [key, value] : j.items())
            if (key != "mode" && key != "fixture" && key != "name")
                r.fail_key("fixture", key, "fixture mode takes only \"fixture\" and \"name\"");
        if (!j.contains("fixture")) r.fail("fixture", "mode requires \"fixture\"");
        p.fixture = r.string_at(j["fixture"], "fixture");
        return p;
    }

    if (!j.contains("coordinates") || !j["coordinates"].is_array() || j["coordinates"].empty())
        r.fail("coordinates", "expected a nonempty list of coordinate names");
    std::vector<std::string> names;
    for (const auto& c : j["coordinates"]) {
        std::string n = r.string_at(c, "coordinates");
        bool ident = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char ch : n) ident = ident && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
        if (!ident) r.fail("coordinates", "'" + n + "' is not an identifier", json(n).dump());
        names.push_back(n);
    }
    try {
        p.chart = make_chart(names);
    } catch (const MathError& e) {
        r.fail("coordinates", e.what(), "\"coordinates\"");
    }
    const ChartPtr& c = p.chart;
    if (j.contains("dimension")) {
        const json& d = j["dimension"];
        if (!d.is_number_unsigned() || d.get<std::size_t>() != c->dim())
            r.fail_key("dimension", "dimension", "does not match the " + std::to_string(c->dim()) + " coordinates");
    }

    if (j.contains("structure")) {
        const json& s = j["structure"];
        if (!s.is_object()) r.fail("structure", "expected an object");
        for (const auto& [key, value] : s.items())
            if (key != "omega0" && key != "theta0" && key != "Theta0")
                r.fail_key("structure", key, "unknown key '" + key + "'");
        if (s.contains("omega0")) {
            if (s.contains("theta0") || s.contains("Theta0"))
                r.fail("structure", "give either omega0 or theta0 and Theta0", "\"structure\"");
            if (c->dim() % 2) r.fail("structure", "omega0 needs an even number of coordinates", "\"omega0\"");
            if (s["omega0"].is_string() && s["omega0"] == "darboux")
                p.omega0 = AlmostSymplectic::darboux(c).omega0();
            else
                p.omega0 = r.terms<TensorKind::Form>(s["omega0"], c, 2, "structure.omega0");
        } else {
            if (!s.contains("theta0") || !s.contains("Theta0"))
                r.fail("structure", "expected omega0, or theta0 and Theta0", "\"structure\"");
            if (c->dim() % 2 == 0) r.fail("structure", "theta0, Theta0 need an odd number of coordinates", "\"theta0\"");
            p.theta0 = r.terms<TensorKind::Form>(s["theta0"], c, 1, "structure.theta0");
            p.Theta0 = r.terms<TensorKind::Form>(s["Theta0"], c, 2, "structure.Theta0");
        }
    }
    if (j.contains("casimirs")) p.casimirs = r.expressions(j["casimirs"], c, "casimirs");
    if (j.contains("k")) {
        if (!j["k"].is_number_integer() || j["k"].get<int>() < 1) r.fail_key("k", "k", "expected a positive integer");
        p.k = j["k"].get<int>();
    }
    if (j.contains("sigma")) p.sigma = r.terms<TensorKind::Form>(j["sigma"], c, 2, "sigma");
    if (j.contains("tau")) p.tau = r.terms<TensorKind::Form>(j["tau"], c, 1, "tau");
    if (j.contains("constraints")) p.constraints = r.expressions(j["constraints"], c, "constraints");
    if (j.contains("hamiltonian")) p.hamiltonian = r.expression(j["hamiltonian"], c, "hamiltonian");
    if (j.contains("zeta")) p.zeta = r.form_list(j["zeta"], c, 1, "zeta");
    if (j.contains("kernel")) p.kernel = r.form_list(j["kernel"], c, 1, "kernel");
    if (j.contains("coefficient")) p.coefficient = r.expression(j["coefficient"], c, "coefficient");
    if (j.contains("bivector")) p.bivector = r.terms<TensorKind::Multivector>(j["bivector"], c, 2, "bivector");
    if (j.contains("fixture")) r.fail_key("fixture", "fixture", "only fixture mode takes \"fixture\"");

    if (j.contains("expected")) {
        const json& e = j["expected"];
        if (!e.is_object()) r.fail("expected", "expected an object");
        for (const auto& [key, value] : e.items())
            if (key != "table" && key != "f" && key != "g" && key != "rank")
                r.fail_key("expected", key, "unknown key '" + key + "'");
        if (e.contains("f")) p.expected_f = r.expression(e["f"], c, "expected.f");
        if (e.contains("g")) p.expected_g = r.expression(e["g"], c, "expected.g");
        if (e.contains("rank")) {
            if (!e["rank"].is_number_unsigned()) r.fail_key("expected.rank", "rank", "expected a nonnegative integer");
            p.expected_rank = e["rank"].get<std::size_t>();
        }
        if (e.contains("table")) {
            const json& t = e["table"];
            if (!t.is_array()) r.fail("expected.table", "expected a list of {\"i\", \"j\", \"value\"} rows");
            Multivector L(c, 2);
            std::set<std::pair<std::size_t, std::size_t>> seen;
            for (std::size_t n = 0; n < t.size(); ++n) {
                std::string at = "expected.table[" + std::to_string(n) + "]";
                const json& row = t[n];
                if (!row.is_object() || !row.contains("i") || !row.contains("j") || !row.contains("value"))
                    r.fail(at, "expected {\"i\", \"j\", \"value\"}");
                std::string a = r.string_at(row["i"], at + ".i"), b = r.string_at(row["j"], at + ".j");
                if (!c->contains(a)) r.fail(at, "unknown coordinate '" + a + "'", json(a).dump());
                if (!c->contains(b)) r.fail(at, "unknown coordinate '" + b + "'", json(b).dump());
                std::size_t ia = c->index_of(a), ib = c->index_of(b);
                if (ia == ib) r.fail(at, "a coordinate bracket with itself is zero", json(a).dump());
                if (!seen.insert({std::min(ia, ib), std::max(ia, ib)}).second) r.fail(at, "duplicate row");
                L += Multivector::basis(c, std::vector<std::size_t>{ia, ib}, r.expression(row["value"], c, at + ".value"));
            }
            p.expected = bracket_entries(L);
        }
    }
    check_mode_fields(r, p, j);
    return p;
}

ProblemFile read_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_problem(ss.str());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

namespace {

template <TensorKind K>
ojson emit_terms(const Tensor<K>& t) {
    ojson out = ojson::array();
    const Chart& c = *t.chart();
    for (const auto& [I, v] : t.terms()) {
        ojson basis = ojson::array();
        for (std::size_t i : set_indices(I)) basis.push_back(c.name(i));
        out.push_back(ojson{{"coeff", v.to_string(c)}, {"basis", basis}});
    }
    return out;
}

ojson emit_expressions(const std::vector<ScalarField>& fs, const Chart& c) {
    ojson out = ojson::array();
    for (const auto& f : fs) out.push_back(f.to_string(c));
    return out;
}

ojson emit_table(const std::vector<TableRow>& rows) {
    ojson out = ojson::array();
    for (const auto& r : rows) out.push_back(ojson{{"i", r.i}, {"j", r.j}, {"value", r.value}});
    return out;
}

std::vector<TableRow> rows_of(const std::vector<BracketEntry>& entries, const Chart& c) {
    std::vector<TableRow> rows;
    for (const auto& e : entries) rows.push_back({c.name(e.i), c.name(e.j), e.value.to_string(c)});
    return rows;
}

template <class T>
bool same_optional(const std::optional<T>& a, const std::optional<T>& b) {
    return a.has_value() == b.has_value() && (!a || *a == *b);
}

bool same_entries(const std::vector<BracketEntry>& a, const std::vector<BracketEntry>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n].i != b[n].i || a[n].j != b[n].j || a[n].value != b[n].value) return false;
    return true;
}

}  // namespace

bool operator==(const ProblemFile& a, const ProblemFile& b) {
    if (a.mode != b.mode || a.name != b.name || a.fixture != b.fixture) return false;
    if (static_cast<bool>(a.chart) != static_cast<bool>(b.chart)) return false;
    if (a.chart && !same_chart(a.chart, b.chart)) return false;
    return same_optional(a.omega0, b.omega0) && same_optional(a.theta0, b.theta0) &&
           same_optional(a.Theta0, b.Theta0) && a.casimirs == b.casimirs && a.k == b.k &&
           same_optional(a.sigma, b.sigma) && same_optional(a.tau, b.tau) && a.constraints == b.constraints &&
           same_optional(a.hamiltonian, b.hamiltonian) && a.zeta == b.zeta && a.kernel == b.kernel &&
           same_optional(a.coefficient, b.coefficient) && same_optional(a.bivector, b.bivector) &&
           same_entries(a.expected, b.expected) && same_optional(a.expected_f, b.expected_f) &&
           same_optional(a.expected_g, b.expected_g) && a.expected_rank == b.expected_rank;
}

std::string emit_problem(const ProblemFile& p) {
    ojson j;
    if (!p.name.empty()) j["name"] = p.name;
    j["mode"] = mode_name(p.mode);
    if (p.mode == Mode::Fixture) {
        j["fixture"] = p.fixture;
        return j.dump(2) + "\n";
    }
    const Chart& c = *p.chart;
    j["dimension"] = c.dim();
    j["coordinates"] = c.names();
    if (p.omega0) j["structure"] = ojson{{"omega0", emit_terms(*p.omega0)}};
    if (p.theta0) j["structure"] = ojson{{"theta0", emit_terms(*p.theta0)}, {"Theta0", emit_terms(*p.Theta0)}};
    if (!p.casimirs.empty()) j["casimirs"] = emit_expressions(p.casimirs, c);
    if (p.k) j["k"] = *p.k;
    if (p.sigma) j["sigma"] = emit_terms(*p.sigma);
    if (p.tau) j["tau"] = emit_terms(*p.tau);
    if (!p.constraints.empty()) j["constraints"] = emit_expressions(p.constraints, c);
    if (p.hamiltonian) j["hamiltonian"] = p.hamiltonian->to_string(c);
    auto form_list = [](const std::vector<Form>& fs) {
        ojson out = ojson::array();
        for (const auto& f : fs) out.push_back(emit_terms(f));
        return out;
    };
    if (!p.zeta.empty()) j["zeta"] = form_list(p.zeta);
    if (!p.kernel.empty()) j["kernel"] = form_list(p.kernel);
    if (p.coefficient) j["coefficient"] = p.coefficient->to_string(c);
    if (p.bivector) j["bivector"] = emit_terms(*p.bivector);
    if (!p.expected.empty() || p.expected_f || p.expected_g || p.expected_rank) {
        ojson e;
        if (!p.expected.empty()) e["table"] = emit_table(rows_of(p.expected, c));
        if (p.expected_f) e["f"] = p.expected_f->to_string(c);
        if (p.expected_g) e["g"] = p.expected_g->to_string(c);
        if (p.expected_rank) e["rank"] = *p.expected_rank;
        j["expected"] = e;
    }
    return j.dump(2) + "\n";
}

ProblemFile problem_from_fixture(const Fixture& fx) {
    ProblemFile p;
    p.mode = Mode::Construct;
    p.name = fx.name;
    p.chart = fx.chart();
    if (fx.even) {
        p.omega0 = fx.even->structure().omega0();
        p.casimirs = fx.even->casimirs();
        p.k = fx.even->k();
        p.sigma = fx.even->sigma();
    } else {
        p.theta0 = fx.odd->structure().theta0();
        p.Theta0 = fx.odd->structure().Theta0();
        p.casimirs = fx.odd->casimirs();
        p.k = fx.odd->k();
        p.sigma = fx.odd->sigma();
        p.tau = fx.odd->tau();
    }
    p.expected = fx.expected;
    p.expected_f = fx.expected_f;
    p.expected_g = fx.expected_g;
    p.expected_rank = fx.expected_rank;
    return p;
}

// ------------------------------------------------------------------ reports

BracketTable make_table(const Multivector& bivector) {
    BracketTable t;
    t.rows = rows_of(bracket_entries(bivector), *bivector.chart());
    t.rank = bivector_rank(bivector);
    return t;
}

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return !c.decides || c.passed; });
}

namespace {

std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i : idx) s += (s.empty() ? "" : ", ") + std::to_string(i + 1);
    return s;
}

CheckItem kernel_item(const std::vector<std::size_t>& failures, const char* name) {
    return {name, failures.empty(), failures.empty() ? "" : "fails for i = " + index_list(failures)};
}

CheckItem rank_item(std::size_t rank, std::size_t bound, const std::string& name) {
    return {name, rank <= bound, "rank " + std::to_string(rank) + ", bound " + std::to_string(bound)};
}

CheckItem jacobi_item(const Multivector& L) {
    JacobiReport j = jacobi_check(L);
    CheckItem item{"Jacobi identity {x_i,{x_j,x_k}} + cyclic = 0", j.holds, ""};
    if (!j.holds && j.failing_triple) {
        const Chart& c = *L.chart();
        auto [a, b, d] = *j.failing_triple;
        item.detail = "first failing triple (" + c.name(a) + ", " + c.name(b) + ", " + c.name(d) +
                      "): sum = " + j.failing_value.to_string(c);
    }
    return item;
}

struct Outcome {
    Multivector bivector;
    std::optional<ScalarField> f;
    std::optional<ScalarField> g;
    std::vector<CheckItem> checks;
    std::string kind;
};

void add_even_checks(Outcome& o, const EvenProblem& p, const EvenVerification& v, const char* kernel_name) {
    o.checks.push_back(kernel_item(v.kernel_failures, kernel_name));
    o.checks.push_back(rank_item(v.rank, v.rank_bound, "rank ≤ 2k"));
    o.checks.push_back({"top-form bracket formula = Λ", v.formula_route, ""});
    if (v.phi_route) o.checks.push_back({"Ψ⁻¹(Φ) = Λ₀^#(σ)", *v.phi_route, ""});
    if (v.complementary_checked) o.checks.push_back({"2σ∧δσ = δ(σ∧σ)", v.complementary, ""});
    if (v.jacobi_checked) o.checks.push_back(jacobi_item(o.bivector));
    o.f = p.f();
    o.g = p.g();
}

Outcome even_outcome(const EvenProblem& p, const std::optional<Multivector>& candidate, CheckLevel level,
                     const char* kernel_name = "Casimirs: Λ^#(df_i) = 0") {
    Outcome o{candidate ? *candidate : p.structure().sharp(p.sigma()), {}, {}, {}, "even"};
    add_even_checks(o, p, verify_even(p, o.bivector, level), kernel_name);
    return o;
}

Outcome odd_outcome(const OddProblem& p, const std::optional<Multivector>& candidate, CheckLevel level) {
    Outcome o{candidate ? *candidate : assembled_bivector(p), p.f(), p.g(), {}, "odd"};
    OddVerification v = verify_odd(p, o.bivector, level);
    const SigmaTauReport& st = v.sigma_tau;
    o.checks.push_back({"σ semi-basic: i_{E₀}σ = 0", st.sigma_semibasic, ""});
    o.checks.push_back({"τ semi-basic: τ(E₀) = 0", st.tau_semibasic, ""});
    o.checks.push_back(kernel_item(st.tau_not_annihilating, "τ(X_{f_i}) = 0"));
    o.checks.push_back(kernel_item(st.compatibility_failures, "σ(X_{f_i},·) + ⟨df_i,E₀⟩τ = 0"));
    o.checks.push_back({"suspended condition 2σ'∧δσ' = δ(σ'∧σ') with σ' = σ + τ∧ds", st.suspended_condition, ""});
    std::string ranks = "(" + std::to_string(st.sigma_rank) + ", " + std::to_string(st.tau_rank) + ")";
    o.checks.push_back({"(rank σ, rank τ) in the listed cases", st.rank_pair_listed, ranks, false});
    o.checks.push_back({"semi-basic equation 2σ∧δσ = δ(σ∧σ)", st.first_equation, "", false});
    o.checks.push_back({"semi-basic equation δ(σ∧τ) + δσ∧τ - σ∧δτ = (i_{Λ₀^#(dϑ₀)}σ)σ - ½ i_{Λ₀^#(dϑ₀)}(σ∧σ)",
                        st.second_equation, "", false});
    o.checks.push_back(kernel_item(v.kernel_failures, "Casimirs: Λ^#(df_i) = 0"));
    o.checks.push_back(rank_item(v.rank, v.rank_bound, "rank ≤ 2k"));
    o.checks.push_back({"top-form bracket formula = Λ", v.formula_route, ""});
    if (v.suspension_route) o.checks.push_back({"suspended bracket restricts to Λ", *v.suspension_route, ""});
    if (level == CheckLevel::Full) o.checks.push_back(jacobi_item(o.bivector));
    return o;
}

Outcome generic_outcome(const Multivector& L, const std::vector<ScalarField>& casimirs, CheckLevel level) {
    Outcome o{L, {}, {}, {}, "bivector"};
    std::vector<std::size_t> failures;
    for (std::size_t i = 0; i < casimirs.size(); ++i)
        if (!bivector_sharp(L, differential(L.chart(), casimirs[i])).is_zero()) failures.push_back(i);
    o.checks.push_back(kernel_item(failures, "Casimirs: Λ^#(df_i) = 0"));
    std::size_t m = L.chart()->dim();
    std::size_t bound = casimirs.size() <= m ? m - casimirs.size() : 0;
    o.checks.push_back(rank_item(bivector_rank(L), bound, "rank ≤ dim - #Casimirs"));
    if (level == CheckLevel::Full) o.checks.push_back(jacobi_item(L));
    return o;
}

CheckItem g_equals_minus_k(const ScalarField& g, int k, const Chart& c) {
    return {"g = i_{Λ₀}σ = -k", g == ScalarField(-k), "g = " + g.to_string(c)};
}

Outcome outcome(const ProblemFile& p, CheckLevel level) {
    const ChartPtr& c = p.chart;
    switch (p.mode) {
    case Mode::Construct: {
        if (!p.sigma) return generic_outcome(*p.bivector, p.casimirs, level);
        if (p.is_odd()) {
            OddProblem op(AlmostCosymplectic(*p.theta0, *p.Theta0), p.casimirs, *p.k, *p.sigma,
                          p.tau ? *p.tau : Form(c, 1));
            return odd_outcome(op, p.bivector, level);
        }
        return even_outcome(EvenProblem(AlmostSymplectic(*p.omega0), p.casimirs, *p.k, *p.sigma), p.bivector, level);
    }
    case Mode::Dirac: {
        DiracData d = make_dirac(AlmostSymplectic(*p.omega0), p.constraints);
        EvenProblem ep = dirac_problem(d);
        Outcome o = even_outcome(ep, p.bivector ? p.bivector : std::optional<Multivector>(dirac_bivector(d)), level,
                                 "constraints are Casimirs: Λ^#(df_i) = 0");
        o.checks.push_back(g_equals_minus_k(ep.g(), ep.k(), *c));
        return o;
    }
    case Mode::Nonholonomic: {
        NonholonomicData d = make_nonholonomic(c, *p.hamiltonian, p.zeta);
        EvenProblem ep = nonholonomic_problem(d);
        Outcome o = even_outcome(ep, p.bivector ? p.bivector : std::optional<Multivector>(nonholonomic_bivector(d)),
                                 level, "kernel: Λ^#(df^i) = Λ^#(ζ^i) = 0");
        o.checks.push_back(g_equals_minus_k(ep.g(), ep.k(), *c));
        return o;
    }
    case Mode::Kernel:
        return even_outcome(EvenProblem::with_kernel(AlmostSymplectic(*p.omega0), p.kernel, *p.sigma), p.bivector,
                            level, "kernel: Λ^#(α_i) = 0");
    case Mode::Jacobian: {
        Form vol = p.omega0   ? AlmostSymplectic(*p.omega0).omega()
                   : p.theta0 ? AlmostCosymplectic(*p.theta0, *p.Theta0).omega()
                              : Form::basis(c, [&] {
                                    std::vector<std::size_t> all(c->dim());
                                    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
                                    return all;
                                }());
        Multivector L = p.bivector ? *p.bivector
                                   : jacobian_bivector(VolumeStructure(vol), p.casimirs,
                                                       p.coefficient ? *p.coefficient : ScalarField(1));
        return generic_outcome(L, p.casimirs, level);
    }
    case Mode::Fixture:
        break;
    }
    throw InputError("fixture problems are resolved before construction");
}

ProblemFile resolve(const ProblemFile& p) {
    if (p.mode != Mode::Fixture) return p;
    try {
        return problem_from_fixture(fixture(p.fixture));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

void add_reference_checks(Report& r, const ProblemFile& p, const Outcome& o) {
    const Chart& c = *p.chart;
    if (!p.expected.empty()) {
        std::vector<std::string> diffs;
        Multivector want = bivector_from_entries(p.chart, p.expected);
        Multivector delta = o.bivector - want;
        for (const auto& e : bracket_entries(delta)) {
            if (diffs.size() == 3) {
                diffs.push_back("...");
                break;
            }
            IndexSet I = (IndexSet{1} << e.i) | (IndexSet{1} << e.j);
            diffs.push_back("{" + c.name(e.i) + ", " + c.name(e.j) + "} = " + o.bivector.coefficient(I).to_string(c) +
                            ", reference " + want.coefficient(I).to_string(c));
        }
        std::string detail;
        for (const auto& d : diffs) detail += (detail.empty() ? "" : "; ") + d;
        r.checks.push_back({"bracket table = reference", diffs.empty(), detail});
    }
    if (p.expected_rank) {
        std::size_t rank = bivector_rank(o.bivector);
        r.checks.push_back({"rank = reference rank", rank == *p.expected_rank,
                            "rank " + std::to_string(rank) + ", reference " + std::to_string(*p.expected_rank)});
    }
    auto compare = [&](const char* name, const std::optional<ScalarField>& got, const std::optional<ScalarField>& want) {
        if (!want || !got) return;
        bool same = *got == *want;
        r.checks.push_back({std::string(name) + " = reference " + name, same,
                            same ? "" : "computed " + got->to_string(c) + ", reference " + want->to_string(c), false});
    };
    compare("f", o.f, p.expected_f);
    compare("g", o.g, p.expected_g);
}

Report report_for(const ProblemFile& raw, CheckLevel level, bool with_table) {
    ProblemFile p = resolve(raw);
    if (!with_table && raw.mode == Mode::Construct && !p.sigma && !p.bivector)
        throw InputError("nothing to verify: give sigma or a bivector");
    if (with_table && p.mode == Mode::Construct && !p.sigma)
        throw InputError("construct requires \"sigma\"; use verify for a bare bivector");
    Outcome o = outcome(p, level);
    Report r;
    r.problem = p.name.empty() ? "(unnamed)" : p.name;
    r.mode = mode_name(p.mode) + ", " + o.kind;
    if (with_table) {
        BracketTable t = make_table(o.bivector);
        if (o.f) t.f = o.f->to_string(*p.chart);
        if (o.g) t.g = o.g->to_string(*p.chart);
        r.table = std::move(t);
    }
    r.checks = std::move(o.checks);
    add_reference_checks(r, p, o);
    if (level == CheckLevel::Fast) r.notes.push_back("fast check level: Jacobi triples and the δ-condition skipped");
    return r;
}

}  // namespace

Report cmd_construct(const ProblemFile& problem, CheckLevel level) { return report_for(problem, level, true); }

Report cmd_verify(const ProblemFile& problem, CheckLevel level) { return report_for(problem, level, false); }

std::string render(const Report& r, Format format) {
    if (format == Format::Machine) {
        ojson j;
        j["problem"] = r.problem;
        j["mode"] = r.mode;
        if (r.table) {
            j["table"] = emit_table(r.table->rows);
            j["f"] = r.table->f ? ojson(*r.table->f) : ojson(nullptr);
            j["g"] = r.table->g ? ojson(*r.table->g) : ojson(nullptr);
            j["rank"] = r.table->rank;
        }
        ojson checks = ojson::array();
        for (const auto& c : r.checks)
            checks.push_back(ojson{{"name", c.name}, {"passed", c.passed}, {"decides", c.decides}, {"detail", c.detail}});
        j["checks"] = checks;
        j["notes"] = r.notes;
        j["passed"] = r.passed();
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "problem: " << r.problem << " (" << r.mode << ")\n";
    if (r.table) {
        const BracketTable& t = *r.table;
        out << "brackets: " << t.rows.size() << " nonzero\n";
        std::vector<std::string> keys;
        std::size_t width = 0;
        for (const auto& row : t.rows) {
            keys.push_back("{" + row.i + ", " + row.j + "}");
            width = std::max(width, keys.back().size());
        }
        for (std::size_t n = 0; n < t.rows.size(); ++n)
            out << "  " << keys[n] << std::string(width - keys[n].size(), ' ') << " = " << t.rows[n].value << "\n";
        if (t.f) out << "f = " << *t.f << "\n";
        if (t.g) out << "g = " << *t.g << "\n";
        out << "rank = " << t.rank << "\n";
    }
    out << "checks:\n";
    for (const auto& c : r.checks) {
        const char* tag = !c.decides ? (c.passed ? "info" : "INFO") : (c.passed ? "pass" : "FAIL");
        out << "  " << tag << "  " << c.name;
        if (!c.detail.empty()) out << "  [" << c.detail << "]";
        out << "\n";
    }
    for (const auto& n : r.notes) out << "note: " << n << "\n";
    out << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

FixtureFiles cmd_fixture(const std::string& name) {
    std::optional<Fixture> fx;
    try {
        fx = fixture(name);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    FixtureFiles out;
    for (char ch : fx->name) {
        char c = std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
        if (c != '_' || (!out.stem.empty() && out.stem.back() != '_')) out.stem += c;
    }
    while (!out.stem.empty() && out.stem.back() == '_') out.stem.pop_back();
    out.problem = emit_problem(problem_from_fixture(*fx));
    const Chart& c = *fx->chart();
    ojson e;
    e["fixture"] = fx->name;
    e["table"] = emit_table(rows_of(fx->expected, c));
    if (fx->expected_f) e["f"] = fx->expected_f->to_string(c);
    if (fx->expected_g) e["g"] = fx->expected_g->to_string(c);
    if (fx->expected_rank) e["rank"] = *fx->expected_rank;
    out.expected = e.dump(2) + "\n";
    return out;
}

}  // namespace casimir::cli
