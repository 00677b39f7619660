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

#include "casimir/symplectic_star.hpp"
#include "random_tensors.hpp"

using namespace casimir;
using namespace casimir::testing;

namespace {

using Idx = std::vector<std::size_t>;

ScalarField E(const char* s, const ChartPtr& c) { return parse_expression(s, *c); }

// A non-closed, non-constant almost symplectic form on a 2n-chart.
AlmostSymplectic twisted(const ChartPtr& c) {
    const std::size_t n = c->dim() / 2;
    Form w(c, 2);
    for (std::size_t i = 0; i < n; ++i) w += Form::basis(c, Idx{i, i + n});
    w += Form::basis(c, Idx{0, 1}, E("x1", c));
    return AlmostSymplectic(w);
}

int pow_sign(int e) { return (e % 2) ? -1 : 1; }

}  // namespace

TEST_CASE("Darboux structure") {
    auto c = make_chart({"q1", "q2", "p1", "p2"});
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    CHECK(s.n() == 2);
    CHECK(s.lambda0() == Multivector::basis(c, Idx{0, 2}) + Multivector::basis(c, Idx{1, 3}));
    CHECK(interior(s.lambda0(), s.omega0()).value() == ScalarField(-2));
    CHECK(s.sharp(s.omega0()) == s.lambda0());
    CHECK(s.sharp_inverse(s.lambda0()) == s.omega0());
    CHECK(s.volume().dual() == divided_power(s.lambda0(), 2));
    // Λ₀^#(dh) is the Hamiltonian field with ⟨dk, X_h⟩ = {h, k}.
    ScalarField h = E("q1*p2^2", c), k = E("p1 + q2", c);
    CHECK(pair(differential(c, k), s.sharp(differential(c, h))) == poisson_bracket(s.lambda0(), h, k));
}

TEST_CASE("degenerate ω₀ is rejected") {
    auto c = chart_of_dim(4);
    CHECK_THROWS_AS(AlmostSymplectic(Form::basis(c, Idx{0, 1})), MathError);
    CHECK_THROWS_AS(AlmostSymplectic(Form::basis(chart_of_dim(3), Idx{0, 1})), MathError);
}

TEST_CASE("sharp inverts ω₀^♭ and is multiplicative") {
    std::mt19937 rng(31);
    auto c = chart_of_dim(4);
    AlmostSymplectic s = twisted(c);
    for (std::size_t j = 0; j < 4; ++j) {
        Multivector X = coordinate_vector(c, j);
        // ω₀^♭(X) = -ω₀(X,·) = -i_X ω₀.
        CHECK(s.sharp(-interior(X, s.omega0())) == X);
    }
    for (int t = 0; t < 10; ++t) {
        Form a = random_form(rng, c, 1 + t % 2), b = random_form(rng, c, 1);
        CHECK(s.sharp(wedge(a, b)) == wedge(s.sharp(a), s.sharp(b)));
        Multivector P = random_multivector(rng, c, t % 5);
        CHECK(s.sharp(s.sharp_inverse(P)) == P);
    }
}

TEST_CASE("star: involution, powers of ω₀ and contraction property") {
    std::mt19937 rng(32);
    auto c = chart_of_dim(6);
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    for (int k = 0; k <= 3; ++k) CHECK(s.star(divided_power(s.omega0(), k)) == divided_power(s.omega0(), 3 - k));
    auto c4 = chart_of_dim(4);
    AlmostSymplectic t = twisted(c4);
    for (int i = 0; i < 10; ++i) {
        int p = i % 3, q = (i / 3) % 2 + 1;
        Form phi = random_form(rng, c4, p, 0.6), psi = random_form(rng, c4, q, 0.6);
        CHECK(t.star(t.star(phi)) == phi);
        Form lhs = t.star(wedge(phi, psi));
        Form v0 = interior(wedge(t.sharp(phi), t.sharp(psi)), t.omega()) * ScalarField(reversal_sign(p + q));
        // The contraction forms carry an extra (-1)^{pq}; it is invisible when pq is even.
        Form v1 = interior(t.sharp(phi), t.star(psi)) * ScalarField(pow_sign(p * q) * reversal_sign(p));
        Form v2 = interior(t.sharp(psi), t.star(phi)) * ScalarField(reversal_sign(q));
        CHECK(lhs == v0);
        CHECK(lhs == v1);
        CHECK(lhs == v2);
        if ((p * q) % 2 == 0) {
            CHECK(lhs == interior(t.sharp(phi), t.star(psi)) * ScalarField(reversal_sign(p)));
            CHECK(lhs == interior(t.sharp(psi), t.star(phi)) * ScalarField(pow_sign(p * q) * reversal_sign(q)));
        }
    }
}

TEST_CASE("Ψ is the star of the preimage and Ψ⁻¹ = Λ₀^#∘∗") {
    std::mt19937 rng(33);
    auto c = chart_of_dim(4);
    AlmostSymplectic s = twisted(c);
    for (int t = 0; t < 10; ++t) {
        Multivector P = random_multivector(rng, c, t % 5, 0.5);
        CHECK(s.volume().psi(P) == s.star(s.sharp_inverse(P)));
        Form z = random_form(rng, c, t % 3, 0.5);
        CHECK(s.volume().psi_inverse(z) == s.sharp(s.star(z)));
    }
}

TEST_CASE("effective forms and Lepage decomposition") {
    std::mt19937 rng(34);
    auto c = make_chart({"q1", "q2", "p1", "p2"});
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    CHECK(s.is_effective(Form::basis(c, Idx{0, 1})));
    CHECK_FALSE(s.is_effective(s.omega0()));

    Form sigma = random_form(rng, c, 2, 0.8);
    auto parts = s.lepage_decompose(sigma);
    REQUIRE(parts.size() == 2);
    ScalarField g = interior(s.lambda0(), sigma).value();
    CHECK(parts[1].value() == g * ScalarField(Rational(-1, 2)));
    CHECK(parts[0] == sigma - s.omega0() * parts[1].value());
    CHECK(s.is_effective(parts[0]));
    CHECK(s.lepage_decompose(Form::basis(c, Idx{0, 1})).size() == 2);
    CHECK(s.lepage_decompose(Form::basis(c, Idx{0, 1}))[1].is_zero());

    auto c6 = chart_of_dim(6);
    AlmostSymplectic s6 = twisted(c6);
    for (int t = 0; t < 6; ++t) {
        int p = 1 + t % 3;
        Form phi = random_form(rng, c6, p, 0.5);
        auto ps = s6.lepage_decompose(phi);
        Form rebuilt(c6, p);
        for (std::size_t q = 0; q < ps.size(); ++q) {
            CHECK(s6.is_effective(ps[q]));
            rebuilt += wedge(ps[q], divided_power(s6.omega0(), static_cast<int>(q)));
        }
        CHECK(rebuilt == phi);
    }
    CHECK_THROWS_AS(s.lepage_decompose(random_form(rng, c, 3, 1.0)), MathError);
}

TEST_CASE("adjoint of an effective form") {
    auto c = chart_of_dim(6);
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    for (int p = 0; p <= 3; ++p) {
        Idx idx;
        for (int i = 0; i < p; ++i) idx.push_back(static_cast<std::size_t>(i));
        Form psi = Form::basis(c, idx, E("x1 + x5^2", c));
        REQUIRE(s.is_effective(psi));
        int sgn = ((p * (p + 1) / 2) % 2) ? -1 : 1;
        CHECK(s.star(psi) == wedge(psi, divided_power(s.omega0(), 3 - p)) * ScalarField(sgn));
    }
}

TEST_CASE("codifferential squares to zero and kills constant forms") {
    std::mt19937 rng(35);
    auto c = chart_of_dim(4);
    AlmostSymplectic s = twisted(c);
    for (int t = 0; t < 8; ++t) {
        Form phi = random_form(rng, c, 1 + t % 3, 0.6);
        CHECK(s.codifferential(s.codifferential(phi)).is_zero());
    }
    AlmostSymplectic dx = AlmostSymplectic::darboux(c);
    CHECK(dx.codifferential(Form::basis(c, Idx{0, 1}, 3) + Form::basis(c, Idx{1, 2})).is_zero());
}

TEST_CASE("complementary condition matches Jacobi") {
    std::mt19937 rng(36);
    auto c = chart_of_dim(4);
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    CHECK(s.check_complementary(s.omega0()));
    int agree = 0, poisson = 0;
    for (int t = 0; t < 20; ++t) {
        Form sigma = random_form(rng, c, 2, 0.35, 1, 2);
        bool comp = s.check_complementary(sigma);
        bool jac = is_poisson(s.sharp(sigma));
        CHECK(comp == jac);
        agree += comp == jac;
        poisson += jac;
    }
    CHECK(poisson > 0);
    CHECK(poisson < 20);
}

TEST_CASE("δ against Δ = d∘i_Λ₀ - i_Λ₀∘d on a symplectic chart") {
    // The two operators agree up to a sign; record the observed sign per grade.
    std::mt19937 rng(37);
    auto c = chart_of_dim(6);
    AlmostSymplectic s = AlmostSymplectic::darboux(c);
    for (int p = 1; p <= 6; ++p) {
        int plus = 0, minus = 0;
        for (int t = 0; t < 3; ++t) {
            Form phi = random_form(rng, c, p, 0.4);
            Form delta = s.codifferential(phi), brylinski = koszul_delta(s.lambda0(), phi);
            if (delta.is_zero() && brylinski.is_zero()) continue;
            plus += delta == brylinski;
            minus += delta == -brylinski;
        }
        INFO("grade " << p << ": δ = +Δ " << plus << ", δ = -Δ " << minus);
        CHECK(plus + minus > 0);
        CHECK((plus == 0 || minus == 0));
        MESSAGE("grade " << p << (plus ? ": δ = d∘i_Λ₀ - i_Λ₀∘d" : ": δ = i_Λ₀∘d - d∘i_Λ₀"));
    }
}
