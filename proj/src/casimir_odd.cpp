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

#include "casimir/casimir_odd.hpp"

#include "casimir/exact_matrix.hpp"

namespace casimir {

namespace {

constexpr IndexSet bit(std::size_t i) { return IndexSet{1} << i; }

Form checked(Form t, int grade, const char* name) {
    if (t.chart()->dim() % 2 == 0) throw MathError("almost cosymplectic structure needs an odd-dimensional chart");
    if (t.is_zero() || t.grade() != grade) throw MathError(std::string(name) + " must be a nonzero " +
                                                           std::to_string(grade) + "-form");
    return t;
}

Form volume_of(const Form& theta0, const Form& Theta0) {
    require_same_chart(theta0.chart(), Theta0.chart(), "AlmostCosymplectic");
    int n = static_cast<int>(theta0.chart()->dim() / 2);
    Form vol = wedge(theta0, divided_power(Theta0, n));
    if (vol.is_zero())
        throw MathError("ϑ₀∧Θ₀ⁿ vanishes identically: i(E₀)ϑ₀ = 1, i(E₀)Θ₀ = 0 has no unique solution");
    return vol;
}

Form wedge_differentials(const ChartPtr& chart, const std::vector<ScalarField>& fs) {
    Form r = Form::scalar(chart, 1);
    for (const auto& h : fs) r = wedge(r, differential(chart, h));
    return r;
}

}  // namespace

// ------------------------------------------------------------ AlmostCosymplectic

AlmostCosymplectic::AlmostCosymplectic(Form theta0, Form Theta0)
    : theta0_(checked(std::move(theta0), 1, "ϑ₀")),
      Theta0_(checked(std::move(Theta0), 2, "Θ₀")),
      n_(static_cast<int>(theta0_.chart()->dim() / 2)),
      lambda0_(theta0_.chart(), 2),
      E0_(theta0_.chart(), 1),
      volume_(volume_of(theta0_, Theta0_)),
      Theta_top_(divided_power(Theta0_, n_)) {
    const ChartPtr& c = chart();
    const std::size_t m = c->dim();
    // b(X) = -i_X Θ₀ + ϑ₀(X)ϑ₀ has matrix B_ij = W_ij + ϑ_i ϑ_j; E₀ = b⁻¹(ϑ₀) and
    // Λ₀^#(ζ) = b⁻¹(ζ) - ⟨ζ,E₀⟩E₀.
    Matrix B = coefficient_matrix(Theta0_);
    std::vector<ScalarField> th(m);
    for (std::size_t i = 0; i < m; ++i) th[i] = theta0_.coefficient(bit(i));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) B[i][j] += th[i] * th[j];
    auto inv = inverse(B);
    if (!inv) throw MathError("b(X) = -i_XΘ₀ + ϑ₀(X)ϑ₀ is singular: E₀ is not determined");
    std::vector<ScalarField> e(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) e[i] += (*inv)[i][j] * th[j];
        E0_.add(bit(i), e[i]);
    }
    for (std::size_t j = 0; j < m; ++j) {
        Multivector v(c, 1);
        for (std::size_t i = 0; i < m; ++i) v.add(bit(i), (*inv)[i][j] - e[i] * e[j]);
        sharp_images_.push_back(std::move(v));
    }
    // Λ₀^#(dx_i) = Σ_j Λ^{ij} ∂_j.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) lambda0_.add(bit(i) | bit(j), sharp_images_[i].coefficient(bit(j)));
    auto bad = failed_identities();
    if (!bad.empty()) throw MathError("almost cosymplectic structure: " + bad.front() + " fails");
}

Multivector AlmostCosymplectic::sharp(const Form& zeta) const {
    require_same_chart(chart(), zeta.chart(), "sharp");
    return extend_multiplicatively(zeta, sharp_images_);
}

std::vector<std::string> AlmostCosymplectic::failed_identities() const {
    std::vector<std::string> out;
    const ChartPtr& c = chart();
    if (interior(E0_, theta0_) != Form::scalar(c, 1)) out.push_back("i(E₀)ϑ₀ = 1");
    if (!interior(E0_, Theta0_).is_zero()) out.push_back("i(E₀)Θ₀ = 0");
    if (!sharp(theta0_).is_zero()) out.push_back("Λ₀^#(ϑ₀) = 0");
    for (std::size_t j = 0; j < c->dim(); ++j) {
        Form z = coordinate_form(c, j);
        Form rhs = -(z - theta0_ * pair(z, E0_));
        if (interior(sharp(z), Theta0_) != rhs) {
            out.push_back("i(Λ₀^#(ζ))Θ₀ = -(ζ - ⟨ζ,E₀⟩ϑ₀)");
            break;
        }
    }
    for (std::size_t i = 0; i < c->dim(); ++i)
        if (bivector_sharp(lambda0_, coordinate_form(c, i)) != sharp(coordinate_form(c, i))) {
            out.push_back("Λ₀ antisymmetric");
            break;
        }
    return out;
}

bool AlmostCosymplectic::is_semibasic(const Form& phi) const {
    if (phi.grade() == 0) return true;
    return interior(E0_, phi).is_zero();
}

Form AlmostCosymplectic::star_sb(const Form& phi) const {
    require_same_chart(chart(), phi.chart(), "star_sb");
    if (!is_semibasic(phi)) throw MathError("star_sb: form is not semi-basic");
    Form r = interior(sharp(phi), Theta_top_);
    return reversal_sign(phi.grade()) > 0 ? r : -r;
}

Form AlmostCosymplectic::d_sb(const Form& phi) const {
    Form dphi = d(phi);
    if (dphi.is_zero()) return dphi;
    return dphi - wedge(theta0_, interior(E0_, dphi));
}

Form AlmostCosymplectic::delta_sb(const Form& phi) const { return star_sb(d_sb(star_sb(phi))); }

std::pair<Multivector, Multivector> jacobi_pair(const Form& theta0, const Form& Theta0) {
    AlmostCosymplectic s(theta0, Theta0);
    return {s.lambda0(), s.reeb()};
}

ScalarField casimir_factor_odd(const AlmostCosymplectic& s, const std::vector<ScalarField>& casimirs) {
    const int r = static_cast<int>(casimirs.size());
    if (r % 2 == 0) throw MathError("an odd number of Casimir functions is required");
    if ((r - 1) / 2 > s.n()) throw MathError("more Casimir functions than the chart dimension");
    ScalarField f = pair(wedge_differentials(s.chart(), casimirs),
                         wedge(s.reeb(), divided_power(s.lambda0(), (r - 1) / 2)));
    if (f.is_zero()) throw MathError("Casimir set degenerate w.r.t. (Λ₀,E₀) everywhere (f ≡ 0)");
    return f;
}

// ------------------------------------------------------------ OddProblem

OddProblem::OddProblem(AlmostCosymplectic structure, std::vector<ScalarField> casimirs, int k, Form sigma, Form tau)
    : structure_(std::move(structure)),
      casimirs_(std::move(casimirs)),
      k_(k),
      sigma_(std::move(sigma)),
      tau_(std::move(tau)) {
    const int n = structure_.n();
    if (k_ < 1 || k_ > n) throw MathError("k must lie in 1..n");
    if (static_cast<int>(casimirs_.size()) != 2 * n + 1 - 2 * k_)
        throw MathError("expected 2n+1-2k = " + std::to_string(2 * n + 1 - 2 * k_) + " Casimir functions, got " +
                        std::to_string(casimirs_.size()));
    require_same_chart(chart(), sigma_.chart(), "OddProblem sigma");
    require_same_chart(chart(), tau_.chart(), "OddProblem tau");
    if (!sigma_.is_zero() && sigma_.grade() != 2) throw MathError("σ must be a 2-form");
    if (!tau_.is_zero() && tau_.grade() != 1) throw MathError("τ must be a 1-form");
    if (sigma_.is_zero()) sigma_ = Form(chart(), 2);
    if (tau_.is_zero()) tau_ = Form(chart(), 1);
    for (const auto& h : casimirs_) fields_.push_back(structure_.sharp(differential(chart(), h)));
    f_ = casimir_factor_odd(structure_, casimirs_);
    g_ = interior(structure_.lambda0(), sigma_).coefficient(0);
    if (k_ >= 2) {
        const Form& T = structure_.Theta0();
        Form mid = sigma_ + T * (g_ * ScalarField(Rational(1, k_ - 1)));
        phi_ = wedge(wedge(mid, divided_power(T, k_ - 2)), wedge_differentials(chart(), casimirs_)) *
               (ScalarField(-1) / f_);
    }
}

Multivector assembled_bivector(const OddProblem& problem) {
    const AlmostCosymplectic& s = problem.structure();
    Multivector L = s.sharp(problem.sigma()) + wedge(s.sharp(problem.tau()), s.reeb());
    if (L.is_zero()) return Multivector(problem.chart(), 2);
    return L;
}

std::pair<Form, Form> split_bivector(const AlmostCosymplectic& s, const Multivector& bivector) {
    require_same_chart(s.chart(), bivector.chart(), "split_bivector");
    // On M×ℝ the lift of Λ is Λ₀'^#(σ + τ∧ds), and i_{∂s}(σ + τ∧ds) = -τ.
    std::vector<std::string> names = s.chart()->names();
    const std::size_t m = names.size();
    names.push_back(suspension_coordinate(*s.chart()));
    ChartPtr c = make_chart(std::move(names));
    Form ds = coordinate_form(c, m);
    AlmostSymplectic w(lift(s.Theta0(), c) + wedge(ds, lift(s.theta0(), c)));
    Form sp = w.sharp_inverse(lift(bivector, c));
    Form tau_up = -interior(coordinate_vector(c, m), sp);
    Form sigma_up = sp - wedge(tau_up, ds);
    Form sigma(s.chart(), 2), tau(s.chart(), 1);
    for (const auto& [I, v] : sigma_up.terms()) sigma.add(I, v);
    for (const auto& [I, v] : tau_up.terms()) tau.add(I, v);
    return {sigma, tau};
}

SigmaTauReport check_sigma_tau(const OddProblem& problem, CheckLevel level) {
    const AlmostCosymplectic& s = problem.structure();
    const Form& sigma = problem.sigma();
    const Form& tau = problem.tau();
    SigmaTauReport r;
    r.sigma_semibasic = s.is_semibasic(sigma);
    r.tau_semibasic = s.is_semibasic(tau);
    const auto& X = problem.hamiltonian_fields();
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (!interior(X[i], tau).is_zero()) r.tau_not_annihilating.push_back(i);
        ScalarField e = pair(differential(problem.chart(), problem.casimirs()[i]), s.reeb());
        if (!(interior(X[i], sigma) + tau * e).is_zero()) r.compatibility_failures.push_back(i);
    }
    r.sigma_rank = rank(coefficient_matrix(sigma));
    r.tau_rank = tau.is_zero() ? 0 : 1;
    const std::size_t two_k = static_cast<std::size_t>(2 * problem.k());
    r.rank_pair_listed = (r.sigma_rank == two_k && r.tau_rank <= 1) || (r.sigma_rank + 2 == two_k && r.tau_rank == 1);
    if (r.sigma_semibasic && r.tau_semibasic) {
        Form ss = wedge(sigma, sigma);
        r.first_equation = (wedge(sigma, s.delta_sb(sigma)) * ScalarField(2) - s.delta_sb(ss)).is_zero();
        Multivector D = s.sharp(d(s.theta0()));
        Form lhs = s.delta_sb(wedge(sigma, tau)) + wedge(s.delta_sb(sigma), tau) - wedge(sigma, s.delta_sb(tau));
        Form rhs = sigma * interior(D, sigma).coefficient(0) - interior(D, ss) * ScalarField(Rational(1, 2));
        r.second_equation = lhs == rhs;
    }
    EvenProblem sp = suspend(problem);
    r.suspended_condition = sp.structure().check_complementary(sp.sigma());
    if (level == CheckLevel::Full) r.jacobi = jacobi_check(assembled_bivector(problem)).holds;
    return r;
}

// ------------------------------------------------------------ brackets

ScalarField bracket_odd(const OddProblem& problem, const ScalarField& h1, const ScalarField& h2) {
    if (problem.k() == 1)
        return jacobian_bracket(problem.structure().volume(), problem.casimirs(), -problem.g() / problem.f(), h1,
                                h2);
    return top_form_bracket(problem.structure().omega(), *problem.phi(), h1, h2);
}

Multivector formula_bivector_odd(const OddProblem& problem) {
    if (problem.k() == 1)
        return jacobian_bivector(problem.structure().volume(), problem.casimirs(), -problem.g() / problem.f());
    return top_form_bivector(problem.structure().omega(), *problem.phi(), 1);
}

// ------------------------------------------------------------ suspension

std::string suspension_coordinate(const Chart& chart) {
    std::string s = "s";
    while (chart.contains(s)) s += "'";
    return s;
}

template <TensorKind K>
Tensor<K> lift(const Tensor<K>& t, const ChartPtr& extended) {
    const auto& names = t.chart()->names();
    if (extended->dim() < names.size() ||
        !std::equal(names.begin(), names.end(), extended->names().begin()))
        throw MathError("lift: chart does not extend the original");
    Tensor<K> r(extended, t.grade());
    for (const auto& [I, c] : t.terms()) r.add(I, c);
    return r;
}

template Form lift(const Form&, const ChartPtr&);
template Multivector lift(const Multivector&, const ChartPtr&);

EvenProblem suspend(const OddProblem& problem) {
    const AlmostCosymplectic& s = problem.structure();
    std::vector<std::string> names = problem.chart()->names();
    const std::size_t m = names.size();
    names.push_back(suspension_coordinate(*problem.chart()));
    ChartPtr c = make_chart(std::move(names));
    Form ds = coordinate_form(c, m);
    AlmostSymplectic w(lift(s.Theta0(), c) + wedge(ds, lift(s.theta0(), c)));
    std::vector<ScalarField> casimirs = problem.casimirs();
    casimirs.push_back(ScalarField::variable(m));
    Form sigma = lift(problem.sigma(), c) + wedge(lift(problem.tau(), c), ds);
    return EvenProblem(std::move(w), std::move(casimirs), problem.k(), std::move(sigma));
}

// ------------------------------------------------------------ verification

bool OddVerification::passed() const {
    if (!sigma_tau.passed() || !kernel_failures.empty() || rank > rank_bound || !formula_route) return false;
    if (suspension_route && !*suspension_route) return false;
    if (sigma_tau.jacobi && !*sigma_tau.jacobi) return false;
    return true;
}

OddVerification verify_odd(const OddProblem& problem, const Multivector& bivector, CheckLevel level) {
    OddVerification v;
    v.sigma_tau = check_sigma_tau(problem, level);
    for (std::size_t i = 0; i < problem.casimirs().size(); ++i)
        if (!bivector_sharp(bivector, differential(problem.chart(), problem.casimirs()[i])).is_zero())
            v.kernel_failures.push_back(i);
    v.rank = bivector_rank(bivector);
    v.rank_bound = static_cast<std::size_t>(2 * problem.k());
    v.formula_route = formula_bivector_odd(problem) == bivector;
    if (level == CheckLevel::Full) {
        EvenProblem sp = suspend(problem);
        v.suspension_route = formula_bivector(sp) == lift(bivector, sp.chart());
    }
    return v;
}

OddCandidate assemble_odd(const OddProblem& problem, CheckLevel level) {
    Multivector L = assembled_bivector(problem);
    OddVerification v = verify_odd(problem, L, level);
    return OddCandidate{std::move(L),  problem.sigma(), problem.tau(), problem.casimirs(),
                        problem.f(),   problem.g(),     problem.k(),   std::move(v)};
}

}  // namespace casimir
