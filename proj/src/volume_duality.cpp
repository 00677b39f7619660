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

#include "casimir/volume_duality.hpp"

namespace casimir {

namespace {

constexpr IndexSet bit(std::size_t i) { return IndexSet{1} << i; }

IndexSet full_set(std::size_t m) { return (IndexSet{1} << m) - 1; }

}  // namespace

// ------------------------------------------------------------ volume

VolumeStructure::VolumeStructure(Form omega) : omega_(std::move(omega)), dual_(omega_.chart(), 0) {
    const std::size_t m = omega_.chart()->dim();
    if (omega_.is_zero()) throw MathError("volume form is zero");
    if (omega_.grade() != static_cast<int>(m)) throw MathError("volume form must have top degree");
    ScalarField c = top_coefficient(omega_);
    dual_ = Multivector(omega_.chart(), static_cast<int>(m));
    dual_.add(full_set(m), ScalarField(1) / c);
}

Form VolumeStructure::psi(const Multivector& P) const {
    Form r = interior(P, omega_);
    return reversal_sign(P.grade()) > 0 ? r : -r;
}

Multivector VolumeStructure::psi_inverse(const Form& eta) const { return interior(eta, dual_); }

Multivector VolumeStructure::koszul_D(const Multivector& P) const {
    Multivector r = -psi_inverse(d(psi(P)));
    if (r.is_zero() && P.grade() > 0) return Multivector(P.chart(), P.grade() - 1);
    return r;
}

Multivector VolumeStructure::generator_D(const Multivector& P) const {
    Multivector r = koszul_D(P);
    return (P.grade() % 2) ? r : -r;
}

Multivector VolumeStructure::schouten_generator(const Multivector& P, const Multivector& Q) const {
    const int p = P.grade();
    Multivector pq = generator_D(wedge(P, Q)) - wedge(generator_D(P), Q);
    Multivector last = wedge(P, generator_D(Q));
    pq = (p % 2) ? pq + last : pq - last;
    return (p % 2) ? -pq : pq;
}

Multivector VolumeStructure::poisson_defect(const Multivector& L) const {
    return wedge(L, koszul_D(L)) * ScalarField(2) - koszul_D(wedge(L, L));
}

// ------------------------------------------------------------ schouten

namespace {

// [X1∧…∧Xp, Y1∧…∧Yq] = Σ (-1)^{a+b} [Xa,Yb] ∧ X1…X̂a…Xp ∧ Y1…Ŷb…Yq, with
// functions handled through [X1∧…∧Xp, h] = Σ (-1)^{p-a} Xa(h) X1…X̂a…Xp.
Multivector wedge_all(const ChartPtr& chart, const std::vector<Multivector>& xs, std::size_t skip_x,
                      const std::vector<Multivector>& ys, std::size_t skip_y) {
    Multivector r = Multivector::scalar(chart, 1);
    for (std::size_t a = 0; a < xs.size(); ++a)
        if (a != skip_x) r = wedge(r, xs[a]);
    for (std::size_t b = 0; b < ys.size(); ++b)
        if (b != skip_y) r = wedge(r, ys[b]);
    return r;
}

std::vector<Multivector> factors(const ChartPtr& chart, IndexSet I, const ScalarField& c) {
    std::vector<Multivector> out;
    bool first = true;
    for (std::size_t i : set_indices(I)) {
        Multivector v = coordinate_vector(chart, i);
        if (first) v *= c;
        first = false;
        out.push_back(std::move(v));
    }
    return out;
}

Multivector bracket_with_function(const ChartPtr& chart, const std::vector<Multivector>& xs, const ScalarField& h) {
    const std::size_t p = xs.size();
    Multivector r(chart, static_cast<int>(p) - 1);
    for (std::size_t a = 0; a < p; ++a) {
        ScalarField v = apply(xs[a], h);
        if (v.is_zero()) continue;
        Multivector rest = wedge_all(chart, xs, a, {}, 0);
        r += ((p - 1 - a) % 2) ? rest * -v : rest * v;
    }
    return r;
}

}  // namespace

Multivector schouten(const Multivector& P, const Multivector& Q) {
    require_same_chart(P.chart(), Q.chart(), "schouten");
    const ChartPtr& chart = P.chart();
    const int p = P.grade(), q = Q.grade();
    if (p + q == 0) return Multivector(chart, 0);
    Multivector r(chart, p + q - 1);
    if (p + q - 1 > static_cast<int>(chart->dim())) return r;
    for (const auto& [I, pc] : P.terms()) {
        for (const auto& [J, qc] : Q.terms()) {
            if (p == 0) {
                // [h, Q] = (-1)^q [Q, h].
                Multivector t = bracket_with_function(chart, factors(chart, J, qc), pc);
                r += (q % 2) ? -t : t;
                continue;
            }
            if (q == 0) {
                r += bracket_with_function(chart, factors(chart, I, pc), qc);
                continue;
            }
            auto xs = factors(chart, I, pc);
            auto ys = factors(chart, J, qc);
            for (std::size_t a = 0; a < xs.size(); ++a) {
                for (std::size_t b = 0; b < ys.size(); ++b) {
                    // Only the leading factors carry nonconstant coefficients.
                    if (a > 0 && b > 0) continue;
                    Multivector br = lie_bracket(xs[a], ys[b]);
                    if (br.is_zero()) continue;
                    Multivector t = wedge(br, wedge_all(chart, xs, a, ys, b));
                    r += ((a + b) % 2) ? -t : t;
                }
            }
        }
    }
    return r;
}

Form koszul_operator(const Multivector& P, const Multivector& Q, const Form& eta) {
    const int p = P.grade(), q = Q.grade();
    auto sgn = [](int e) { return (e % 2 + 2) % 2 ? -1 : 1; };
    auto iP = [&](const Form& x) { return interior(P, x); };
    auto iQ = [&](const Form& x) { return interior(Q, x); };
    Form t1 = iP(d(iQ(eta)));
    Form t2 = d(iP(iQ(eta)));
    Form t3 = iQ(iP(d(eta)));
    Form t4 = iQ(d(iP(eta)));
    const int target = eta.grade() - p - q + 1;
    Form r(eta.chart(), target < 0 ? 0 : target);
    auto acc = [&](const Form& t, int s) {
        if (t.is_zero()) return;
        r += s > 0 ? t : -t;
    };
    acc(t1, 1);
    acc(t2, -sgn(p));
    acc(t3, -sgn((p - 1) * q));
    acc(t4, sgn((p - 1) * q - p));
    return r;
}

Multivector schouten_koszul_formula(const Multivector& P, const Multivector& Q) {
    require_same_chart(P.chart(), Q.chart(), "schouten_koszul_formula");
    const ChartPtr& chart = P.chart();
    const int r = P.grade() + Q.grade() - 1;
    const std::size_t m = chart->dim();
    if (r < 0) return Multivector(chart, 0);
    Multivector out(chart, r);
    if (r > static_cast<int>(m)) return out;
    // i_R dx_K = (-1)^{(r-1)r/2} ⟨dx_K, R⟩ for |K| = r.
    for (IndexSet K = 0; K <= full_set(m); ++K) {
        if (set_size(K) != r) continue;
        Form test(chart, r);
        test.add(K, 1);
        ScalarField v = koszul_operator(P, Q, test).coefficient(0);
        if (v.is_zero()) continue;
        out.add(K, reversal_sign(r) > 0 ? v : -v);
    }
    return out;
}

// ------------------------------------------------------------ sharp

Multivector bivector_sharp(const Multivector& L, const Form& zeta) {
    const ChartPtr& chart = L.chart();
    require_same_chart(chart, zeta.chart(), "bivector_sharp");
    auto M = coefficient_matrix(L);
    std::vector<Multivector> images;
    for (std::size_t j = 0; j < chart->dim(); ++j) {
        Multivector v(chart, 1);
        for (std::size_t i = 0; i < chart->dim(); ++i) v.add(bit(i), M[j][i]);
        images.push_back(std::move(v));
    }
    return extend_multiplicatively(zeta, images);
}

ScalarField poisson_bracket(const Multivector& L, const ScalarField& h1, const ScalarField& h2) {
    const ChartPtr& chart = L.chart();
    return pair(wedge(differential(chart, h1), differential(chart, h2)), L);
}

// ------------------------------------------------------------ Jacobi

JacobiReport jacobi_check(const Multivector& L, bool stop_at_first) {
    if (!L.is_zero() && L.grade() != 2) throw MathError("jacobi_check requires a bivector");
    const std::size_t m = L.chart()->dim();
    auto M = coefficient_matrix(L);
    // dM[b][i][j] = ∂_b Λ^{ij}, computed lazily for the upper triangle.
    std::vector<std::vector<std::vector<ScalarField>>> dM(
        m, std::vector<std::vector<ScalarField>>(m, std::vector<ScalarField>(m)));
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                dM[b][i][j] = partial(M[i][j], b);
                dM[b][j][i] = -dM[b][i][j];
            }
    JacobiReport rep;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                ScalarField s;
                for (std::size_t b = 0; b < m; ++b) {
                    if (!M[i][b].is_zero() && !dM[b][j][k].is_zero()) s += M[i][b] * dM[b][j][k];
                    if (!M[j][b].is_zero() && !dM[b][k][i].is_zero()) s += M[j][b] * dM[b][k][i];
                    if (!M[k][b].is_zero() && !dM[b][i][j].is_zero()) s += M[k][b] * dM[b][i][j];
                }
                if (s.is_zero()) continue;
                if (rep.holds) {
                    rep.holds = false;
                    rep.failing_triple = std::array<std::size_t, 3>{i, j, k};
                    rep.failing_value = s;
                }
                ++rep.failing_triples;
                if (stop_at_first) return rep;
            }
    return rep;
}

bool is_poisson(const Multivector& L) { return jacobi_check(L).holds; }

PoissonRoutes poisson_routes(const Multivector& L, const VolumeStructure& volume) {
    PoissonRoutes r;
    r.jacobi_sum = jacobi_check(L).holds;
    r.schouten_zero = schouten(L, L).is_zero();
    r.d_condition = volume.poisson_defect(L).is_zero();
    return r;
}

// ------------------------------------------------------------ Koszul bracket of forms

Form koszul_delta(const Multivector& L, const Form& eta) {
    Form a = d(interior(L, eta));
    Form b = interior(L, d(eta));
    Form r(eta.chart(), eta.grade() >= 1 ? eta.grade() - 1 : 0);
    r += a;
    r -= b;
    return r;
}

Form koszul_bracket_forms(const Form& zeta, const Form& eta, const Multivector& L) {
    const int p = zeta.grade();
    Form r = koszul_delta(L, wedge(zeta, eta)) - wedge(koszul_delta(L, zeta), eta);
    Form last = wedge(zeta, koszul_delta(L, eta));
    r = (p % 2) ? r + last : r - last;
    return (p % 2) ? -r : r;
}

std::size_t bivector_rank(const Multivector& L) { return rank(coefficient_matrix(L)); }

}  // namespace casimir
