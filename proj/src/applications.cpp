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

#include "casimir/applications.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <stdexcept>

namespace casimir {

namespace {

constexpr IndexSet bit(std::size_t i) { return IndexSet{1} << i; }

Form wedge_all(const ChartPtr& chart, const std::vector<Form>& forms) {
    Form r = Form::scalar(chart, 1);
    for (const auto& a : forms) r = wedge(r, a);
    return r;
}

std::vector<Form> differentials(const ChartPtr& chart, const std::vector<ScalarField>& fs) {
    std::vector<Form> out;
    for (const auto& h : fs) out.push_back(differential(chart, h));
    return out;
}

Matrix bracket_matrix(const Multivector& L, const std::vector<ScalarField>& fs) {
    const std::size_t r = fs.size();
    Matrix G(r, std::vector<ScalarField>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            G[i][j] = poisson_bracket(L, fs[i], fs[j]);
            G[j][i] = -G[i][j];
        }
    return G;
}

}  // namespace

// ------------------------------------------------------------------ Dirac

DiracData make_dirac(AlmostSymplectic structure, std::vector<ScalarField> constraints) {
    if (constraints.empty() || constraints.size() % 2)
        throw MathError("Dirac constraints must come in a nonzero even number");
    if (static_cast<int>(constraints.size()) >= 2 * structure.n())
        throw MathError("too many constraints for the chart dimension");
    DiracData d{std::move(structure), std::move(constraints), {}, {}, 0};
    d.gram = bracket_matrix(d.structure.lambda0(), d.constraints);
    auto inv = inverse(d.gram);
    if (!inv) throw MathError("the constraint bracket matrix ({f_i,f_j}₀) is singular");
    d.cmatrix = std::move(*inv);
    d.k = d.structure.n() - static_cast<int>(d.constraints.size()) / 2;
    return d;
}

Form dirac_sigma(const DiracData& data) {
    const ChartPtr& c = data.structure.chart();
    auto df = differentials(c, data.constraints);
    Form sigma = data.structure.omega0();
    for (std::size_t i = 0; i < df.size(); ++i)
        for (std::size_t j = i + 1; j < df.size(); ++j) sigma += wedge(df[i], df[j]) * data.cmatrix[i][j];
    return sigma;
}

Multivector dirac_bivector(const DiracData& data) {
    const AlmostSymplectic& s = data.structure;
    std::vector<Multivector> X;
    for (const auto& h : data.constraints) X.push_back(s.sharp(differential(s.chart(), h)));
    Multivector L = s.lambda0();
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j) L += wedge(X[i], X[j]) * data.cmatrix[i][j];
    return L;
}

ScalarField dirac_bracket(const DiracData& data, const ScalarField& h1, const ScalarField& h2) {
    const AlmostSymplectic& s = data.structure;
    ScalarField f = casimir_factor(s, data.constraints);
    Form eta = wedge(divided_power(s.omega0(), data.k - 1), wedge_all(s.chart(), differentials(s.chart(), data.constraints)));
    return top_form_bracket(s.omega(), eta, h1, h2) / f;
}

EvenProblem dirac_problem(const DiracData& data) {
    return EvenProblem(data.structure, data.constraints, data.k, dirac_sigma(data));
}

// ------------------------------------------------------------ nonholonomic

AlmostSymplectic cotangent_structure(const ChartPtr& chart) {
    const std::size_t m = chart->dim();
    if (m % 2) throw MathError("cotangent chart must be even-dimensional");
    const std::size_t n = m / 2;
    Form w(chart, 2);
    for (std::size_t s = 0; s < n; ++s) w += Form::basis(chart, std::vector<std::size_t>{n + s, s});
    return AlmostSymplectic(w);
}

NonholonomicData make_nonholonomic(const ChartPtr& chart, ScalarField hamiltonian, std::vector<Form> zeta) {
    NonholonomicData d{cotangent_structure(chart), chart->dim() / 2, std::move(hamiltonian), std::move(zeta),
                       {}, {}, {}, {}, 0};
    const std::size_t n = d.n;
    const std::size_t r = d.zeta.size();
    if (r == 0 || r >= n) throw MathError("need between 1 and n-1 constraint forms");
    std::vector<std::vector<ScalarField>> z(r, std::vector<ScalarField>(n));
    for (std::size_t i = 0; i < r; ++i) {
        const Form& zi = d.zeta[i];
        require_same_chart(chart, zi.chart(), "nonholonomic constraint");
        if (zi.is_zero() || zi.grade() != 1) throw MathError("constraint forms must be nonzero 1-forms");
        for (const auto& [I, v] : zi.terms()) {
            std::size_t s = set_indices(I).front();
            if (s >= n) throw MathError("constraint forms may only involve dq");
            for (std::size_t t = n; t < 2 * n; ++t)
                if (!partial(v, t).is_zero()) throw MathError("constraint coefficients must depend on q only");
            z[i][s] = v;
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        ScalarField fi;
        Multivector Zi(chart, 1);
        for (std::size_t s = 0; s < n; ++s) {
            if (z[i][s].is_zero()) continue;
            fi += z[i][s] * partial(d.hamiltonian, n + s);
            Zi.add(bit(n + s), z[i][s]);
        }
        d.f.push_back(fi);
        d.Z.push_back(Zi);
    }
    d.C.assign(r, std::vector<ScalarField>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t) {
                    if (z[i][s].is_zero() || z[j][t].is_zero()) continue;
                    d.C[i][j] += z[i][s] * partial(partial(d.hamiltonian, n + s), n + t) * z[j][t];
                }
    auto inv = inverse(d.C);
    if (!inv) throw MathError("the constraint matrix 𝒞 is singular");
    d.C_inverse = std::move(*inv);
    d.k = static_cast<int>(n - r);
    return d;
}

namespace {

// A_im = ½ Σ_{j,l} 𝒞_ij {f^j,f^l}₀ 𝒞_lm.
Matrix quadratic_coefficients(const NonholonomicData& d) {
    Matrix G = bracket_matrix(d.structure.lambda0(), d.f);
    Matrix A = multiply(multiply(d.C_inverse, G), d.C_inverse);
    for (auto& row : A)
        for (auto& v : row) v *= ScalarField(Rational(1, 2));
    return A;
}

}  // namespace

Multivector nonholonomic_bivector(const NonholonomicData& d) {
    const AlmostSymplectic& s = d.structure;
    const std::size_t r = d.f.size();
    Multivector L = s.lambda0();
    Matrix A = quadratic_coefficients(d);
    for (std::size_t l = 0; l < r; ++l) {
        Multivector X = s.sharp(differential(s.chart(), d.f[l]));
        for (std::size_t m = 0; m < r; ++m) {
            L += wedge(X, d.Z[m]) * d.C_inverse[l][m];
            L += wedge(d.Z[l], d.Z[m]) * A[l][m];
        }
    }
    return L;
}

Form nonholonomic_sigma(const NonholonomicData& d) {
    const AlmostSymplectic& s = d.structure;
    const std::size_t r = d.f.size();
    Form sigma = s.omega0();
    Matrix A = quadratic_coefficients(d);
    for (std::size_t l = 0; l < r; ++l) {
        Form df = differential(s.chart(), d.f[l]);
        for (std::size_t m = 0; m < r; ++m) {
            sigma -= wedge(df, d.zeta[m]) * d.C_inverse[l][m];
            sigma += wedge(d.zeta[l], d.zeta[m]) * A[l][m];
        }
    }
    return sigma;
}

std::vector<Form> nonholonomic_kernel(const NonholonomicData& d) {
    std::vector<Form> out = differentials(d.structure.chart(), d.f);
    out.insert(out.end(), d.zeta.begin(), d.zeta.end());
    return out;
}

ScalarField nonholonomic_bracket(const NonholonomicData& d, const ScalarField& h1, const ScalarField& h2) {
    const Multivector& L0 = d.structure.lambda0();
    const std::size_t r = d.f.size();
    ScalarField v = poisson_bracket(L0, h1, h2);
    std::vector<ScalarField> z1(r), z2(r), b1(r), b2(r);
    for (std::size_t i = 0; i < r; ++i) {
        z1[i] = apply(d.Z[i], h1);
        z2[i] = apply(d.Z[i], h2);
        b1[i] = poisson_bracket(L0, d.f[i], h1);
        b2[i] = poisson_bracket(L0, d.f[i], h2);
    }
    for (std::size_t l = 0; l < r; ++l)
        for (std::size_t m = 0; m < r; ++m) v += d.C_inverse[l][m] * (b1[l] * z2[m] - b2[l] * z1[m]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t l = 0; l < r; ++l)
                for (std::size_t m = 0; m < r; ++m)
                    v += d.C_inverse[i][j] * poisson_bracket(L0, d.f[j], d.f[l]) * d.C_inverse[l][m] * z1[i] * z2[m];
    return v;
}

EvenProblem nonholonomic_problem(const NonholonomicData& d) {
    return EvenProblem::with_kernel(d.structure, nonholonomic_kernel(d), nonholonomic_sigma(d));
}

// ---------------------------------------------------------------- fixtures

std::vector<BracketEntry> bracket_entries(const Multivector& bivector) {
    std::vector<BracketEntry> out;
    for (const auto& [I, v] : bivector.terms()) {
        auto idx = set_indices(I);
        out.push_back({idx[0], idx[1], v});
    }
    std::sort(out.begin(), out.end(),
              [](const BracketEntry& a, const BracketEntry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
    return out;
}

Multivector bivector_from_entries(const ChartPtr& chart, const std::vector<BracketEntry>& entries) {
    Multivector L(chart, 2);
    for (const auto& e : entries) L += Multivector::basis(chart, std::vector<std::size_t>{e.i, e.j}, e.value);
    return L;
}

namespace {

ChartPtr lattice_chart(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("b" + std::to_string(i));
    return make_chart(names);
}

std::vector<ScalarField> lattice_casimirs(int n) {
    ScalarField C1, C2 = 1;
    for (int i = 0; i < n; ++i) {
        C1 += ScalarField::variable(static_cast<std::size_t>(n + i));
        C2 *= ScalarField::variable(static_cast<std::size_t>(i));
    }
    return {C1, C2};
}

// -Σ_i Π_{j≠i} a_j.
ScalarField lattice_factor(int n) {
    ScalarField f;
    for (int i = 0; i < n; ++i) {
        ScalarField p = 1;
        for (int j = 0; j < n; ++j)
            if (j != i) p *= ScalarField::variable(static_cast<std::size_t>(j));
        f -= p;
    }
    return f;
}

void require_lattice_size(int n) {
    if (n < 3) throw std::invalid_argument("lattice fixtures need n ≥ 3");
    if (n > 16) throw std::invalid_argument("lattice fixtures support n ≤ 16");
}

}  // namespace

Fixture toda(int n) {
    require_lattice_size(n);
    ChartPtr c = lattice_chart(n);
    const auto un = static_cast<std::size_t>(n);
    auto a = [&](int i) { return static_cast<std::size_t>((i - 1) % n); };
    auto b = [&](int i) { return un + static_cast<std::size_t>((i - 1) % n); };
    auto A = [&](int i) { return ScalarField::variable(a(i)); };
    // σ_T = Σ_j σ_j∧Σ_{l≥j} σ'_l with σ_j = da_j - da_{j+1}, σ'_l = a_l db_l - a_{l+1} db_{l+1}.
    Form sigma(c, 2);
    for (int j = 1; j <= n - 1; ++j) {
        Form sj = coordinate_form(c, a(j)) - coordinate_form(c, a(j + 1));
        Form tail(c, 1);
        for (int l = j; l <= n - 1; ++l)
            tail += coordinate_form(c, b(l)) * A(l) - coordinate_form(c, b(l + 1)) * A(l + 1);
        sigma += wedge(sj, tail);
    }
    Multivector ref(c, 2);
    ScalarField g;
    for (int i = 1; i <= n; ++i) {
        Multivector db = coordinate_vector(c, b(i)) - coordinate_vector(c, b(i + 1));
        ref += wedge(coordinate_vector(c, a(i)), db) * A(i);
        g -= A(i);
    }
    Fixture fx{"toda" + std::to_string(n), EvenProblem(AlmostSymplectic::darboux(c), lattice_casimirs(n), n - 1, sigma),
               std::nullopt, bracket_entries(ref), lattice_factor(n), g, static_cast<std::size_t>(2 * n - 2), ref};
    return fx;
}

Fixture volterra_companion(int n) {
    require_lattice_size(n);
    ChartPtr c = lattice_chart(n);
    const auto un = static_cast<std::size_t>(n);
    auto a = [&](int i) { return static_cast<std::size_t>((i - 1) % n); };
    auto b = [&](int i) { return un + static_cast<std::size_t>((i - 1) % n); };
    auto A = [&](int i) { return ScalarField::variable(a(i)); };
    Form sigma(c, 2);
    Multivector ref(c, 2);
    for (int j = 1; j <= n; ++j) {
        ScalarField aa = A(j) * A(j + 1);
        sigma += wedge(coordinate_form(c, a(j)), coordinate_form(c, a(j + 1)));
        sigma += wedge(coordinate_form(c, b(j)), coordinate_form(c, b(j + 1))) * aa;
        ref += wedge(coordinate_vector(c, a(j)), coordinate_vector(c, a(j + 1))) * aa;
        ref += wedge(coordinate_vector(c, b(j)), coordinate_vector(c, b(j + 1)));
    }
    std::size_t rank = static_cast<std::size_t>(n % 2 ? 2 * n - 2 : 2 * n - 4);
    return Fixture{"volterra_companion" + std::to_string(n),
                   EvenProblem(AlmostSymplectic::darboux(c), lattice_casimirs(n), n - 1, sigma),
                   std::nullopt,
                   bracket_entries(ref),
                   lattice_factor(n),
                   ScalarField(0),
                   rank,
                   ref};
}

Fixture gl3() {
    ChartPtr c = make_chart({"x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3"});
    auto e = [&](const char* s) { return parse_expression(s, *c); };
    auto b = [&](std::vector<std::string> n, const char* coeff) { return Form::basis(c, n, e(coeff)); };
    Form theta = b({"z3"}, "1");
    Form Theta = b({"x1", "y1"}, "1") + b({"x2", "y2"}, "1") + b({"x3", "y3"}, "1") + b({"z1", "z2"}, "1");
    Form sigma = b({"x1", "x2"}, "-z1") + b({"x2", "x3"}, "-z2") + b({"x1", "x3"}, "z3") + b({"x1", "y1"}, "-y1") +
                 b({"x1", "y2"}, "y1") + b({"x2", "y2"}, "-y2") + b({"x2", "y3"}, "y2") + b({"x3", "y3"}, "-y3") +
                 b({"x3", "y1"}, "y3") + b({"y1", "z1"}, "-z2") + b({"y1", "z2"}, "-z1") + b({"y2", "z1"}, "z2") +
                 b({"y3", "z2"}, "z1");
    Form tau = b({"y2"}, "-z3") + b({"y3"}, "z3");
    std::vector<ScalarField> casimirs{e("x1 + x2 + x3"), e("y1*z2 + y2*z3 + y3*z1"), e("z1*z2*z3")};
    const char* table[][3] = {{"x1", "y1", "-y1"}, {"x1", "y3", "y3"},  {"x1", "z1", "-z1"}, {"x1", "z2", "z2"},
                              {"x2", "y1", "y1"},  {"x2", "y2", "-y2"}, {"x2", "z2", "-z2"}, {"x2", "z3", "z3"},
                              {"x3", "y2", "y2"},  {"x3", "y3", "-y3"}, {"x3", "z1", "z1"},  {"x3", "z3", "-z3"},
                              {"y1", "y2", "-z1"}, {"y1", "y3", "z3"},  {"y2", "y3", "-z2"}};
    std::vector<BracketEntry> expected;
    for (auto& row : table) expected.push_back({c->index_of(row[0]), c->index_of(row[1]), e(row[2])});
    Multivector ref = bivector_from_entries(c, expected);
    return Fixture{"gl3",
                   std::nullopt,
                   OddProblem(AlmostCosymplectic(theta, Theta), casimirs, 3, sigma, tau),
                   bracket_entries(ref),
                   e("-z1*z2^2 - z1^2*z2 - z1*z2*z3"),
                   e("y1 + y2 + y3"),
                   std::size_t{6},
                   ref};
}

Fixture r3_jacobian(const std::string& F_text) {
    ChartPtr c = make_chart({"x", "y", "z"});
    ScalarField F = parse_expression(F_text, *c);
    ScalarField Fx = partial(F, 0), Fy = partial(F, 1), Fz = partial(F, 2);
    if (Fz.is_zero()) throw MathError("r3_jacobian needs a function depending on z");
    Multivector ref = Multivector::basis(c, std::vector<std::size_t>{0, 1}, Fz) +
                      Multivector::basis(c, std::vector<std::size_t>{0, 2}, -Fy) +
                      Multivector::basis(c, std::vector<std::size_t>{1, 2}, Fx);
    AlmostCosymplectic s(coordinate_form(c, 2), Form::basis(c, std::vector<std::size_t>{0, 1}));
    auto [sigma, tau] = split_bivector(s, ref);
    return Fixture{"r3_jacobian(" + F.to_string(*c) + ")",
                   std::nullopt,
                   OddProblem(s, {F}, 1, sigma, tau),
                   bracket_entries(ref),
                   Fz,
                   -Fz,
                   std::size_t{2},
                   ref};
}

std::vector<std::string> fixture_names() {
    return {"toda(n)", "volterra_companion(n)", "gl3", "r3_jacobian", "r3_jacobian(<expr in x,y,z>)"};
}

Fixture fixture(const std::string& raw) {
    std::string name;
    for (char ch : raw) name += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    name = trim(name);
    static const std::regex lattice(R"(^(toda|volterra_companion|volterra)\s*(?:\(\s*(\d+)\s*\)|[\s:_]*(\d+))$)");
    std::smatch m;
    if (std::regex_match(name, m, lattice)) {
        int n = std::stoi(m[2].matched ? m[2].str() : m[3].str());
        return m[1] == "toda" ? toda(n) : volterra_companion(n);
    }
    if (name == "gl3" || name == "gl(3)") return gl3();
    if (name == "r3_jacobian") return r3_jacobian();
    if (name.rfind("r3_jacobian(", 0) == 0 && name.back() == ')') {
        std::string inner = trim(raw).substr(12);
        inner.pop_back();
        return r3_jacobian(inner);
    }
    std::string list;
    for (const auto& n : fixture_names()) list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown fixture '" + raw + "'; available: " + list);
}

}  // namespace casimir
