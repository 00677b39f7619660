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

#include "casimir/casimir_even.hpp"
#include "casimir/exact_matrix.hpp"
#include "random_tensors.hpp"

using namespace casimir;
using namespace casimir::testing;

namespace {

using Idx = std::vector<std::size_t>;

ScalarField E(const char* s, const ChartPtr& c) { return parse_expression(s, *c); }

ChartPtr six() { return make_chart({"q1", "q2", "q3", "p1", "p2", "p3"}); }

// Poisson bivector on six() with Casimirs q1 + q2^2 and p1: two commuting
// decoupled rank-2 pieces, so rank 4.
Multivector six_poisson(const ChartPtr& c) {
    Multivector V = Multivector::basis(c, Idx{0}, E("2*q2", c)) - Multivector::basis(c, Idx{1});
    return Multivector::basis(c, Idx{2, 5}) + wedge(Multivector::basis(c, Idx{4}), V);
}

// Random bivector in the (q2,q3,p2,p3) directions with coefficients in (q1,p1):
// Poisson with Casimirs q1, p1.
Multivector random_leafwise(std::mt19937& rng, const ChartPtr& c) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    const Idx dirs{1, 2, 4, 5};
    Multivector L(c, 2);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) {
            ScalarField v = ScalarField(coeff(rng)) + ScalarField(coeff(rng)) * ScalarField::variable(0) +
                            ScalarField(coeff(rng)) * ScalarField::variable(3).pow(2);
            L += Multivector::basis(c, Idx{dirs[a], dirs[b]}, v);
        }
    return L;
}

// det(∇h1, ∇h2, ∇F) on a 3-chart, computed from partials.
ScalarField gradient_det(const ChartPtr& c, const ScalarField& h1, const ScalarField& h2, const ScalarField& F) {
    Matrix M(3, std::vector<ScalarField>(3));
    const ScalarField* rows[3] = {&h1, &h2, &F};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) M[i][j] = partial(*rows[i], j);
    (void)c;
    return determinant(M);
}

}  // namespace

TEST_CASE("casimir factor of Darboux pairs") {
    auto c = make_chart({"q1", "q2", "p1", "p2"});
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    std::vector<ScalarField> F{E("q1", c), E("p1", c)};
    auto r = kernel_factor_routes(s, {differential(c, F[0]), differential(c, F[1])});
    CHECK(r.pairing == ScalarField(1));
    CHECK(r.hamiltonian == ScalarField(1));
    CHECK(casimir_factor(s, F) == ScalarField(1));
    CHECK(casimir_factor(s, {F[1], F[0]}) == ScalarField(-1));
    CHECK_THROWS_AS(casimir_factor(s, {E("q1", c), E("q2", c)}), MathError);
}

TEST_CASE("casimir factor routes agree and f^2 is the Gram determinant") {
    std::mt19937 rng(5);
    auto c = chart_of_dim(4);
    Form w = Form::basis(c, Idx{0, 2}) + Form::basis(c, Idx{1, 3}) + Form::basis(c, Idx{0, 1}, E("x3", c));
    AlmostSymplectic s(w);
    for (int t = 0; t < 8; ++t) {
        std::vector<Form> alphas{random_form(rng, c, 1, 0.6), random_form(rng, c, 1, 0.6)};
        CHECK(kernel_factor_routes(s, alphas).agree());
        std::vector<ScalarField> F{random_field(rng, 4, 2, 2), random_field(rng, 4, 2, 2)};
        auto routes = kernel_factor_routes(s, {differential(c, F[0]), differential(c, F[1])});
        CHECK(routes.agree());
        CHECK(routes.pairing * routes.pairing == casimir_gram_determinant(s, F));
    }
    auto c6 = six();
    AlmostSymplectic s6 = AlmostSymplectic::darboux(c6);
    for (int t = 0; t < 3; ++t) {
        std::vector<ScalarField> F;
        for (int i = 0; i < 4; ++i) F.push_back(random_field(rng, 6, 2, 2));
        auto routes = kernel_factor_routes(s6, {differential(c6, F[0]), differential(c6, F[1]),
                                                differential(c6, F[2]), differential(c6, F[3])});
        CHECK(routes.agree());
        CHECK(routes.pairing * routes.pairing == casimir_gram_determinant(s6, F));
    }
}

TEST_CASE("problem validation") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    Form sigma = s.sharp_inverse(six_poisson(c));
    std::vector<ScalarField> F{E("q1 + q2^2", c), E("p1", c)};
    CHECK_NOTHROW(EvenProblem(s, F, 2, sigma));
    CHECK_THROWS_AS(EvenProblem(s, F, 1, sigma), MathError);
    CHECK_THROWS_AS(EvenProblem(s, F, 0, sigma), MathError);
    CHECK_THROWS_AS(EvenProblem(s, {E("q1", c), E("q2", c)}, 2, sigma), MathError);
    CHECK_THROWS_AS(EvenProblem(s, {}, 3, sigma), MathError);
    EvenProblem k1(s, {E("q1", c), E("p1", c), E("q2", c), E("p2", c)}, 1, Form::basis(c, Idx{2, 5}));
    CHECK_THROWS_AS(build_phi(k1), MathError);
}

TEST_CASE("recovers a Poisson structure with Casimirs, k = 2") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    Multivector L = six_poisson(c);
    REQUIRE(is_poisson(L));
    Form sigma = s.sharp_inverse(L);
    std::vector<ScalarField> F{E("q1 + q2^2", c), E("p1", c)};
    EvenProblem pb(s, F, 2, sigma);
    CHECK(pb.f() == ScalarField(1));
    CHECK(verify_casimir_section(pb).passed());
    CHECK(s.check_complementary(sigma));
    // The top-form route reproduces Λ without going through Λ₀^#.
    CHECK(formula_bivector(pb) == L);
    CHECK(s.volume().psi_inverse(build_phi(pb)) == L);
    ScalarField h1 = E("q2*p3 + p2^2", c), h2 = E("q3*p1 - q2", c);
    CHECK(bracket(pb, h1, h2) == poisson_bracket(L, h1, h2));
    for (const auto& Fi : F) CHECK(bracket(pb, Fi, h1).is_zero());
    PoissonCandidate cand = build_poisson(pb);
    CHECK(cand.bivector == L);
    CHECK(cand.verification.passed());
    CHECK(cand.verification.rank == 4);
}

TEST_CASE("property: leafwise Poisson structures are recovered") {
    std::mt19937 rng(17);
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    std::vector<ScalarField> F{E("q1", c), E("p1", c)};
    int nondegenerate = 0;
    for (int t = 0; t < 6; ++t) {
        Multivector L = random_leafwise(rng, c);
        Form sigma = s.sharp_inverse(L);
        EvenProblem pb(s, F, 2, sigma);
        CHECK(formula_bivector(pb) == L);
        EvenVerification v = verify_even(pb, L, CheckLevel::Full);
        CHECK(v.passed());
        CHECK(v.complementary);
        CHECK(v.jacobi.holds);
        if (bivector_rank(L) == 4) {
            ++nondegenerate;
            CHECK(verify_casimir_section(pb).passed());
        }
        // Bracket properties: skew, Casimirs central, Leibniz.
        ScalarField a = random_field(rng, 6), b = random_field(rng, 6), e = random_field(rng, 6);
        CHECK(bracket(pb, a, b) == -bracket(pb, b, a));
        CHECK(bracket(pb, F[0], a).is_zero());
        CHECK(bracket(pb, a, b * e) == bracket(pb, a, b) * e + b * bracket(pb, a, e));
    }
    CHECK(nondegenerate > 0);
}

TEST_CASE("k = 1 dispatches to the Jacobian bracket") {
    auto c = make_chart({"q1", "q2", "p1", "p2"});
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    ScalarField a = E("1 + q1*p1 + q2^2", c);
    Multivector L = Multivector::basis(c, Idx{1, 3}, a);
    Form sigma = s.sharp_inverse(L);
    std::vector<ScalarField> F{E("q1", c), E("p1", c)};
    EvenProblem pb(s, F, 1, sigma);
    CHECK(pb.g() == -a);
    CHECK(formula_bivector(pb) == L);
    CHECK(bracket(pb, E("q2", c), E("p2", c)) == a);
    CHECK(jacobian_bracket(s.volume(), F, -pb.g() / pb.f(), E("q2", c), E("p2", c)) == a);
    CHECK(build_poisson(pb).verification.passed());
}

TEST_CASE("Jacobian bracket on R3 with F = x^2 + y^2 + z^2") {
    auto c = make_chart({"x", "y", "z"});
    VolumeStructure vol(Form::basis(c, Idx{0, 1, 2}));
    ScalarField F = E("x^2 + y^2 + z^2", c);
    ScalarField x = E("x", c), y = E("y", c), z = E("z", c);
    CHECK(jacobian_bracket(vol, {F}, 1, x, y) == E("2*z", c));
    CHECK(jacobian_bracket(vol, {F}, 1, x, z) == E("-2*y", c));
    CHECK(jacobian_bracket(vol, {F}, 1, y, z) == E("2*x", c));
    Multivector L = jacobian_bivector(vol, {F}, 1);
    CHECK(is_poisson(L));
    std::mt19937 rng(2);
    for (int t = 0; t < 6; ++t) {
        ScalarField h1 = random_field(rng, 3), h2 = random_field(rng, 3), q = random_field(rng, 3, 2, 1);
        if (q.is_zero()) q = 1;
        CHECK(jacobian_bracket(vol, {F}, q, h1, h2) == q * gradient_det(c, h1, h2, F));
        CHECK(poisson_bracket(L, h1, h2) == gradient_det(c, h1, h2, F));
    }
    CHECK_THROWS_AS(jacobian_bracket(vol, {F, x}, 1, x, y), MathError);
}

TEST_CASE("ω₀ itself is not a section with Casimirs") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    EvenProblem pb(s, {E("q1", c), E("p1", c)}, 2, s.omega0());
    CasimirSectionReport r = verify_casimir_section(pb);
    CHECK_FALSE(r.passed());
    CHECK(r.not_annihilated.size() == 2);
    EvenVerification v = verify_even(pb, s.lambda0(), CheckLevel::Fast);
    CHECK_FALSE(v.passed());
    CHECK(v.kernel_failures.size() == 2);
}

TEST_CASE("sign-flipped bracket is rejected") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    Multivector L = six_poisson(c);
    EvenProblem pb(s, {E("q1 + q2^2", c), E("p1", c)}, 2, s.sharp_inverse(L));
    Multivector bad = L - Multivector::basis(c, Idx{2, 5}, 2);
    EvenVerification v = verify_even(pb, bad, CheckLevel::Full);
    CHECK_FALSE(v.formula_route);
    CHECK_FALSE(*v.phi_route);
    CHECK_FALSE(v.passed());
}

TEST_CASE("non-Poisson σ fails the complementary condition") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    // Leafwise, but the coefficients depend on leaf coordinates.
    Multivector L = Multivector::basis(c, Idx{1, 2}, E("p2", c)) + Multivector::basis(c, Idx{4, 5}, E("q3", c)) +
                    Multivector::basis(c, Idx{1, 5}, E("q2", c));
    REQUIRE_FALSE(is_poisson(L));
    Form sigma = s.sharp_inverse(L);
    EvenProblem pb(s, {E("q1", c), E("p1", c)}, 2, sigma);
    CHECK_FALSE(s.check_complementary(sigma));
    CHECK_THROWS_AS(build_poisson(pb), MathError);
    PoissonCandidate cand = assemble_even(pb, CheckLevel::Full);
    CHECK_FALSE(cand.verification.passed());
    CHECK_FALSE(cand.verification.jacobi.holds);
}

TEST_CASE("prescribed kernel annihilates the given forms") {
    auto c = six();
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    // Non-integrable kernel: dq3 - q1 dq2 and dp3.
    std::vector<Form> alphas{coordinate_form(c, 2) - Form::basis(c, Idx{1}, E("q1", c)), coordinate_form(c, 5)};
    Form sigma = s.omega0();
    EvenProblem pb = EvenProblem::with_kernel(s, alphas, sigma);
    CHECK(pb.k() == 2);
    CHECK_FALSE(pb.has_casimirs());
    Multivector L = formula_bivector(pb);
    for (const auto& a : alphas) CHECK(bivector_sharp(L, a).is_zero());
    ScalarField h1 = E("q2*p3", c), h2 = E("p2 + q1", c);
    CHECK(bracket_with_kernel(s, alphas, sigma, h1, h2) == poisson_bracket(L, h1, h2));
}
