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

#include "casimir/casimir_even.hpp"

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
    out.reserve(fs.size());
    for (const auto& h : fs) out.push_back(differential(chart, h));
    return out;
}

// (σ + g/(k-1) ω)∧ω^{k-2}/(k-2)!, the common middle factor of Φ and its odd analogue.
Form middle_factor(const Form& sigma, const ScalarField& g, const Form& omega, int k) {
    Form s = sigma + omega * (g * ScalarField(Rational(1, k - 1)));
    return wedge(s, divided_power(omega, k - 2));
}

}  // namespace

CasimirFactorRoutes kernel_factor_routes(const AlmostSymplectic& s, const std::vector<Form>& alphas) {
    const int r = static_cast<int>(alphas.size());
    if (r % 2) throw MathError("the number of kernel forms must be even on an even-dimensional chart");
    if (r / 2 > s.n()) throw MathError("more kernel forms than the chart dimension");
    CasimirFactorRoutes out;
    out.pairing = pair(wedge_all(s.chart(), alphas), divided_power(s.lambda0(), r / 2));
    Multivector X = Multivector::scalar(s.chart(), 1);
    for (const auto& a : alphas) X = wedge(X, s.sharp(a));
    out.hamiltonian = pair(divided_power(s.omega0(), r / 2), X);
    return out;
}

ScalarField casimir_factor(const AlmostSymplectic& s, const std::vector<ScalarField>& casimirs) {
    if (casimirs.empty()) throw MathError("casimir_factor needs at least one function");
    auto routes = kernel_factor_routes(s, differentials(s.chart(), casimirs));
    if (!routes.agree()) throw std::logic_error("casimir factor routes disagree");
    if (routes.pairing.is_zero()) throw MathError("Casimir set degenerate w.r.t. ω₀ everywhere (f ≡ 0)");
    return routes.pairing;
}

ScalarField casimir_gram_determinant(const AlmostSymplectic& s, const std::vector<ScalarField>& casimirs) {
    const std::size_t r = casimirs.size();
    Matrix G(r, std::vector<ScalarField>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            G[i][j] = poisson_bracket(s.lambda0(), casimirs[i], casimirs[j]);
            G[j][i] = -G[i][j];
        }
    return determinant(G);
}

// ------------------------------------------------------------ top forms

ScalarField top_form_bracket(const Form& volume, const Form& eta, const ScalarField& h1, const ScalarField& h2) {
    const ChartPtr& chart = volume.chart();
    Form top = wedge(wedge(differential(chart, h1), differential(chart, h2)), eta);
    if (top.is_zero()) return {};
    return top_coefficient(top) / top_coefficient(volume);
}

Multivector top_form_bivector(const Form& volume, const Form& eta, const ScalarField& scale) {
    const ChartPtr& chart = volume.chart();
    const std::size_t m = chart->dim();
    const IndexSet all = (IndexSet{1} << m) - 1;
    const ScalarField inv = scale / top_coefficient(volume);
    Multivector L(chart, 2);
    for (const auto& [K, c] : eta.terms()) {
        IndexSet rest = all & ~K;
        if (set_size(rest) != 2) continue;
        L.add(rest, c * inv * ScalarField(concat_sign(rest, K)));
    }
    return L;
}

// ------------------------------------------------------------ EvenProblem

EvenProblem::EvenProblem(AlmostSymplectic structure, std::vector<ScalarField> casimirs, int k, Form sigma)
    : EvenProblem(structure, casimirs, differentials(structure.chart(), casimirs), k, std::move(sigma), true) {}

EvenProblem EvenProblem::with_kernel(AlmostSymplectic structure, std::vector<Form> alphas, Form sigma) {
    const int r = static_cast<int>(alphas.size());
    if (r % 2) throw MathError("the number of kernel forms must be even on an even-dimensional chart");
    int k = structure.n() - r / 2;
    return EvenProblem(std::move(structure), {}, std::move(alphas), k, std::move(sigma), false);
}

EvenProblem::EvenProblem(AlmostSymplectic structure, std::vector<ScalarField> casimirs, std::vector<Form> alphas,
                         int k, Form sigma, bool from_casimirs)
    : structure_(std::move(structure)),
      casimirs_(std::move(casimirs)),
      alphas_(std::move(alphas)),
      k_(k),
      sigma_(std::move(sigma)),
      from_casimirs_(from_casimirs) {
    const int n = structure_.n();
    if (k_ < 1 || k_ > n) throw MathError("k must lie in 1..n");
    if (static_cast<int>(alphas_.size()) != 2 * n - 2 * k_)
        throw MathError("expected 2n-2k = " + std::to_string(2 * n - 2 * k_) + " Casimir functions, got " +
                        std::to_string(alphas_.size()));
    if (alphas_.empty()) throw MathError("at least one Casimir function is required");
    require_same_chart(structure_.chart(), sigma_.chart(), "EvenProblem sigma");
    if (!sigma_.is_zero() && sigma_.grade() != 2) throw MathError("σ must be a 2-form");
    for (const auto& a : alphas_) {
        require_same_chart(structure_.chart(), a.chart(), "EvenProblem kernel form");
        if (!a.is_zero() && a.grade() != 1) throw MathError("kernel forms must be 1-forms");
        fields_.push_back(structure_.sharp(a));
    }
    auto routes = kernel_factor_routes(structure_, alphas_);
    if (!routes.agree()) throw std::logic_error("casimir factor routes disagree");
    f_ = routes.pairing;
    if (f_.is_zero()) throw MathError("Casimir set degenerate w.r.t. ω₀ everywhere (f ≡ 0)");
    g_ = interior(structure_.lambda0(), sigma_).coefficient(0);
    if (k_ >= 2) {
        Form mid = middle_factor(sigma_, g_, structure_.omega0(), k_);
        phi_ = wedge(mid, wedge_all(chart(), alphas_)) * (ScalarField(-1) / f_);
    }
}

CasimirSectionReport verify_casimir_section(const EvenProblem& problem) {
    CasimirSectionReport rep;
    const auto& X = problem.hamiltonian_fields();
    for (std::size_t i = 0; i < X.size(); ++i)
        if (!interior(X[i], problem.sigma()).is_zero()) rep.not_annihilated.push_back(i);
    rep.sigma_rank = rank(coefficient_matrix(problem.sigma()));
    rep.expected_rank = static_cast<std::size_t>(2 * problem.k());
    return rep;
}

Form build_phi(const EvenProblem& problem) {
    if (!problem.phi()) throw MathError("build_phi requires k ≥ 2; use jacobian_bracket for k = 1");
    return *problem.phi();
}

ScalarField jacobian_bracket(const VolumeStructure& volume, const std::vector<ScalarField>& casimirs,
                             const ScalarField& coefficient, const ScalarField& h1, const ScalarField& h2) {
    const ChartPtr& chart = volume.chart();
    if (chart->dim() < 3) throw MathError("jacobian_bracket needs dimension ≥ 3");
    if (casimirs.size() + 2 != chart->dim()) throw MathError("jacobian_bracket needs exactly m-2 functions");
    return coefficient * top_form_bracket(volume.omega(), wedge_all(chart, differentials(chart, casimirs)), h1, h2);
}

Multivector jacobian_bivector(const VolumeStructure& volume, const std::vector<ScalarField>& casimirs,
                              const ScalarField& coefficient) {
    const ChartPtr& chart = volume.chart();
    if (chart->dim() < 3) throw MathError("jacobian_bracket needs dimension ≥ 3");
    if (casimirs.size() + 2 != chart->dim()) throw MathError("jacobian_bracket needs exactly m-2 functions");
    return top_form_bivector(volume.omega(), wedge_all(chart, differentials(chart, casimirs)), coefficient);
}

ScalarField bracket(const EvenProblem& problem, const ScalarField& h1, const ScalarField& h2) {
    const Form& vol = problem.structure().omega();
    if (problem.k() == 1) {
        ScalarField c = -problem.g() / problem.f();
        if (problem.has_casimirs())
            return jacobian_bracket(problem.structure().volume(), problem.casimirs(), c, h1, h2);
        return c * top_form_bracket(vol, wedge_all(problem.chart(), problem.kernel_forms()), h1, h2);
    }
    return top_form_bracket(vol, *problem.phi(), h1, h2);
}

Multivector formula_bivector(const EvenProblem& problem) {
    const Form& vol = problem.structure().omega();
    if (problem.k() == 1) {
        ScalarField c = -problem.g() / problem.f();
        if (problem.has_casimirs()) return jacobian_bivector(problem.structure().volume(), problem.casimirs(), c);
        return top_form_bivector(vol, wedge_all(problem.chart(), problem.kernel_forms()), c);
    }
    return top_form_bivector(vol, *problem.phi(), 1);
}

ScalarField bracket_with_kernel(const AlmostSymplectic& s, const std::vector<Form>& alphas, const Form& sigma,
                                const ScalarField& h1, const ScalarField& h2) {
    return bracket(EvenProblem::with_kernel(s, alphas, sigma), h1, h2);
}

// ------------------------------------------------------------ verification

bool EvenVerification::passed() const {
    if (!kernel_failures.empty() || rank > rank_bound || !formula_route) return false;
    if (phi_route && !*phi_route) return false;
    if (complementary_checked && !complementary) return false;
    if (jacobi_checked && !jacobi.holds) return false;
    return true;
}

EvenVerification verify_even(const EvenProblem& problem, const Multivector& bivector, CheckLevel level) {
    EvenVerification v;
    for (std::size_t i = 0; i < problem.kernel_forms().size(); ++i)
        if (!bivector_sharp(bivector, problem.kernel_forms()[i]).is_zero()) v.kernel_failures.push_back(i);
    v.rank = bivector_rank(bivector);
    v.rank_bound = static_cast<std::size_t>(2 * problem.k());
    if (problem.phi()) v.phi_route = problem.structure().volume().psi_inverse(*problem.phi()) == bivector;
    v.formula_route = formula_bivector(problem) == bivector;
    if (level == CheckLevel::Full) {
        v.complementary_checked = true;
        v.complementary = problem.structure().check_complementary(problem.sigma());
        v.jacobi_checked = true;
        v.jacobi = jacobi_check(bivector);
    }
    return v;
}

PoissonCandidate assemble_even(const EvenProblem& problem, CheckLevel level) {
    Multivector L = problem.structure().sharp(problem.sigma());
    if (L.is_zero()) L = Multivector(problem.chart(), 2);
    EvenVerification v = verify_even(problem, L, level);
    return PoissonCandidate{std::move(L), problem.sigma(), std::nullopt, problem.casimirs(),
                            problem.f(),  problem.g(),     problem.k(),  std::move(v)};
}

PoissonCandidate build_poisson(const EvenProblem& problem) {
    if (!problem.structure().check_complementary(problem.sigma()))
        throw MathError("σ does not satisfy 2σ∧δσ = δ(σ∧σ)");
    return assemble_even(problem, CheckLevel::Full);
}

}  // namespace casimir
