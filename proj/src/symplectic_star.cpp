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

#include "casimir/symplectic_star.hpp"

namespace casimir {

namespace {

constexpr IndexSet bit(std::size_t i) { return IndexSet{1} << i; }

Form checked_two_form(Form omega0) {
    const std::size_t m = omega0.chart()->dim();
    if (m % 2) throw MathError("almost symplectic structure needs an even-dimensional chart");
    if (omega0.grade() != 2 || omega0.is_zero()) throw MathError("ω₀ must be a nonzero 2-form");
    return omega0;
}

Form top_power(const Form& omega0) { return divided_power(omega0, static_cast<int>(omega0.chart()->dim() / 2)); }

Form volume_of(const Form& omega0) {
    Form vol = top_power(omega0);
    if (vol.is_zero()) throw MathError("ω₀ is degenerate: ω₀ⁿ vanishes identically");
    return vol;
}

}  // namespace

AlmostSymplectic::AlmostSymplectic(Form omega0)
    : omega0_(checked_two_form(std::move(omega0))),
      n_(static_cast<int>(omega0_.chart()->dim() / 2)),
      lambda0_(omega0_.chart(), 2),
      volume_(volume_of(omega0_)) {
    const ChartPtr& c = chart();
    const std::size_t m = c->dim();
    Matrix W = coefficient_matrix(omega0_);
    det_ = casimir::determinant(W);
    auto inv = inverse(W);
    if (det_.is_zero() || !inv) throw MathError("ω₀ is degenerate: det = " + det_.to_string(*c));
    // Λ₀ = -W⁻¹ as coefficient matrices.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) lambda0_.add(bit(i) | bit(j), -(*inv)[i][j]);
    for (std::size_t j = 0; j < m; ++j) {
        Multivector v(c, 1);
        Form w(c, 1);
        for (std::size_t i = 0; i < m; ++i) {
            v.add(bit(i), -(*inv)[j][i]);
            w.add(bit(i), W[i][j]);
        }
        sharp_images_.push_back(std::move(v));
        flat_images_.push_back(std::move(w));
    }
}

AlmostSymplectic AlmostSymplectic::darboux(const ChartPtr& chart) {
    const std::size_t m = chart->dim();
    if (m % 2) throw MathError("Darboux form needs an even-dimensional chart");
    Form w(chart, 2);
    for (std::size_t i = 0; i < m / 2; ++i) w.add(bit(i) | bit(i + m / 2), 1);
    return AlmostSymplectic(std::move(w));
}

Multivector AlmostSymplectic::sharp(const Form& zeta) const {
    require_same_chart(chart(), zeta.chart(), "sharp");
    return extend_multiplicatively(zeta, sharp_images_);
}

Form AlmostSymplectic::sharp_inverse(const Multivector& P) const {
    require_same_chart(chart(), P.chart(), "sharp_inverse");
    return extend_multiplicatively(P, flat_images_);
}

Form AlmostSymplectic::star(const Form& phi) const {
    Form r = interior(sharp(phi), omega());
    return reversal_sign(phi.grade()) > 0 ? r : -r;
}

bool AlmostSymplectic::is_effective(const Form& psi) const { return interior(lambda0_, psi).is_zero(); }

std::vector<Form> AlmostSymplectic::lepage_decompose(const Form& phi) const {
    require_same_chart(chart(), phi.chart(), "lepage_decompose");
    const int p = phi.grade();
    if (p > n_) throw MathError("Lepage decomposition requires grade ≤ n");
    const int qmax = p / 2;
    std::vector<Form> parts(static_cast<std::size_t>(qmax) + 1, Form(chart(), 0));
    Form rest = phi;
    // Lowest grade first: i_{Λ₀}^q kills every component except ψ_{p-2q}, and
    // i_{Λ₀}(ψ_r∧ω₀^s/s!) = -(n-r-s+1) ψ_r∧ω₀^{s-1}/(s-1)! for effective ψ_r.
    for (int q = qmax; q >= 0; --q) {
        const int r = p - 2 * q;
        Form t = rest;
        for (int s = 0; s < q; ++s) t = interior(lambda0_, t);
        Rational factor = 1;
        for (int s = 1; s <= q; ++s) factor *= -(n_ - r - s + 1);
        Form psi = t * ScalarField(Rational(1) / factor);
        if (psi.is_zero()) psi = Form(chart(), r);
        rest -= wedge(psi, divided_power(omega0_, q));
        parts[static_cast<std::size_t>(q)] = psi;
    }
    if (!rest.is_zero()) throw MathError("Lepage decomposition did not terminate with zero remainder");
    return parts;
}

Form AlmostSymplectic::codifferential(const Form& phi) const { return star(d(star(phi))); }

Form AlmostSymplectic::complementary_defect(const Form& sigma) const {
    return wedge(sigma, codifferential(sigma)) * ScalarField(2) - codifferential(wedge(sigma, sigma));
}

}  // namespace casimir
