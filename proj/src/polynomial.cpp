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

#include "casimir/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace casimir {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t var, unsigned power) {
    if (var >= kMaxVars) throw std::out_of_range("monomial variable index out of range");
    if (power > 255) throw std::overflow_error("monomial exponent exceeds 255");
    Monomial m;
    m.exp[var] = static_cast<std::uint8_t>(power);
    m.deg = static_cast<std::uint16_t>(power);
    return m;
}

std::uint32_t Monomial::support() const {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] != 0) s |= (1u << i);
    return s;
}

bool Monomial::divides(const Monomial& other) const {
    if (deg > other.deg) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned e = unsigned(exp[i]) + rhs.exp[i];
        if (e > 255) throw std::overflow_error("monomial exponent exceeds 255");
        r.exp[i] = static_cast<std::uint8_t>(e);
    }
    r.deg = static_cast<std::uint16_t>(deg + rhs.deg);
    return r;
}

Monomial Monomial::operator/(const Monomial& rhs) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint8_t>(exp[i] - rhs.exp[i]);
    r.deg = static_cast<std::uint16_t>(deg - rhs.deg);
    return r;
}

bool grlex_greater(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.exp > b.exp;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        r.exp[i] = std::min(a.exp[i], b.exp[i]);
        d += r.exp[i];
    }
    r.deg = static_cast<std::uint16_t>(d);
    return r;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(std::size_t var) { return monomial(Monomial::variable(var), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    Polynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
    return p;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms_[0].coeff;
}

std::uint32_t Polynomial::support() const {
    std::uint32_t s = 0;
    for (const auto& t : terms_) s |= t.mono.support();
    return s;
}

unsigned Polynomial::degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exp[var]);
    return d;
}

unsigned Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.deg; }

Polynomial Polynomial::monic() const {
    if (terms_.empty() || terms_[0].coeff == 1) return *this;
    Rational inv = 1 / terms_[0].coeff;
    return scaled(inv);
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (sgn(c) == 0) return {};
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
}

Polynomial Polynomial::shifted(const Monomial& m) const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.mono = t.mono * m;
    return p;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

void Polynomial::add_scaled(const Polynomial& rhs, const Rational& c, const Monomial& shift) {
    std::vector<Term> out;
    out.reserve(terms_.size() + rhs.terms_.size());
    auto i = terms_.begin();
    auto j = rhs.terms_.begin();
    const bool do_shift = !shift.is_one();
    while (i != terms_.end() || j != rhs.terms_.end()) {
        if (j == rhs.terms_.end()) {
            out.push_back(std::move(*i++));
            continue;
        }
        Monomial mj = do_shift ? j->mono * shift : j->mono;
        if (i == terms_.end() || grlex_greater(mj, i->mono)) {
            out.push_back({mj, j->coeff * c});
            ++j;
        } else if (mj == i->mono) {
            Rational s = i->coeff + j->coeff * c;
            if (sgn(s) != 0) out.push_back({mj, std::move(s)});
            ++i;
            ++j;
        } else {
            out.push_back(std::move(*i++));
        }
    }
    terms_ = std::move(out);
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    add_scaled(rhs, 1, Monomial{});
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    add_scaled(rhs, -1, Monomial{});
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.shifted(a.terms_[0].mono).scaled(a.terms_[0].coeff);
    if (b.size() == 1) return a.shifted(b.terms_[0].mono).scaled(b.terms_[0].coeff);
    std::vector<Polynomial::Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return Polynomial::from_terms(std::move(prod));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

Polynomial Polynomial::partial(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono.exp[var];
        if (e == 0) continue;
        Term d{t.mono, t.coeff * e};
        d.mono.exp[var] = static_cast<std::uint8_t>(e - 1);
        d.mono.deg = static_cast<std::uint16_t>(d.mono.deg - 1);
        out.push_back(std::move(d));
    }
    return from_terms(std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) {
        unsigned e = t.mono.exp[var];
        Term s = t;
        s.mono.exp[var] = 0;
        s.mono.deg = static_cast<std::uint16_t>(s.mono.deg - e);
        buckets[e].push_back(std::move(s));
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
}

Polynomial Polynomial::from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var) {
    std::vector<Term> all;
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        Monomial shift = Monomial::variable(var, static_cast<unsigned>(d));
        for (const auto& t : coeffs[d].terms_) all.push_back({t.mono * shift, t.coeff});
    }
    return from_terms(std::move(all));
}

namespace {

std::string monomial_string(const Monomial& m, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (m.exp[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += i < names.size() ? names[i] : "x" + std::to_string(i);
        if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
    }
    return s;
}

}  // namespace

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        const bool negative = sgn(c) < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (t.mono.is_one()) {
            out += c.get_str();
        } else if (c == 1) {
            out += monomial_string(t.mono, names);
        } else {
            out += c.get_str() + "*" + monomial_string(t.mono, names);
        }
    }
    return out;
}

// ------------------------------------------------------- division and gcd

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return Polynomial{};
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    const Monomial& lb = b.leading().mono;
    if (b.size() == 1) {
        std::vector<Polynomial::Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lb.divides(t.mono)) return std::nullopt;
            out.push_back({t.mono / lb, t.coeff / b.leading().coeff});
        }
        return Polynomial::from_terms(std::move(out));
    }
    if (a.total_degree() < b.total_degree()) return std::nullopt;
    for (std::size_t v = 0; v < kMaxVars; ++v)
        if (lb.exp[v] != 0 || b.degree_in(v) != 0)
            if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;

    std::vector<Polynomial::Term> quotient;
    Polynomial rem = a;
    const Rational inv_lc = 1 / b.leading().coeff;
    while (!rem.is_zero()) {
        const auto& lt = rem.leading();
        if (!lb.divides(lt.mono)) return std::nullopt;
        Monomial qm = lt.mono / lb;
        Rational qc = lt.coeff * inv_lc;
        Polynomial step = b.shifted(qm).scaled(qc);
        rem -= step;
        quotient.push_back({qm, std::move(qc)});
    }
    return Polynomial::from_terms(std::move(quotient));
}

namespace {

using Coeffs = std::vector<Polynomial>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Polynomial content(const Coeffs& c) {
    Polynomial g;
    for (const auto& x : c) {
        if (x.is_zero()) continue;
        g = g.is_zero() ? x.monic() : gcd(g, x);
        if (g.is_constant()) return Polynomial(1);
    }
    return g;
}

Coeffs divide_all(const Coeffs& c, const Polynomial& d) {
    Coeffs out;
    out.reserve(c.size());
    for (const auto& x : c) {
        auto q = divide_exact(x, d);
        if (!q) throw std::logic_error("content does not divide coefficient");
        out.push_back(std::move(*q));
    }
    return out;
}

// Pseudo-remainder of `a` by `b` as polynomials in the main variable.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
    const std::size_t db = b.size() - 1;
    const Polynomial& lcb = b.back();
    trim(a);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        Polynomial lca = a.back();
        for (auto& x : a) x = x * lcb;
        for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= lca * b[i];
        trim(a);
    }
    return a;
}

Polynomial primitive_gcd_in(const Polynomial& a, const Polynomial& b, std::size_t var) {
    Coeffs A = a.coefficients_in(var);
    Coeffs B = b.coefficients_in(var);
    Polynomial ca = content(A);
    Polynomial cb = content(B);
    Polynomial c = gcd(ca, cb);
    A = divide_all(A, ca);
    B = divide_all(B, cb);
    if (A.size() < B.size()) std::swap(A, B);
    Coeffs g;
    for (;;) {
        Coeffs r = pseudo_remainder(A, B);
        if (r.empty()) {
            g = std::move(B);
            break;
        }
        if (r.size() == 1) {
            g = {Polynomial(1)};
            break;
        }
        A = std::move(B);
        B = divide_all(r, content(r));
    }
    g = divide_all(g, content(g));
    return (c * Polynomial::from_coefficients(g, var)).monic();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Polynomial(1);
    if (a.size() == 1 || b.size() == 1) {
        const Polynomial& mono = a.size() == 1 ? a : b;
        const Polynomial& other = a.size() == 1 ? b : a;
        Monomial g = mono.leading().mono;
        for (const auto& t : other.terms()) {
            g = monomial_gcd(g, t.mono);
            if (g.is_one()) break;
        }
        return Polynomial::monomial(g, 1);
    }
    if (a.size() <= b.size()) {
        if (divide_exact(b, a)) return a.monic();
    } else if (divide_exact(a, b)) {
        return b.monic();
    }

    const std::uint32_t sa = a.support();
    const std::uint32_t sb = b.support();
    auto reduce_by_missing = [](const Polynomial& p, std::uint32_t only_p, const Polynomial& q) {
        const std::size_t var = static_cast<std::size_t>(std::countr_zero(only_p));
        Polynomial g = q.monic();
        for (const auto& c : p.coefficients_in(var)) {
            if (c.is_zero()) continue;
            g = gcd(g, c);
            if (g.is_constant()) break;
        }
        return g;
    };
    if (sa & ~sb) return reduce_by_missing(a, sa & ~sb, b);
    if (sb & ~sa) return reduce_by_missing(b, sb & ~sa, a);

    // Main variable: the common variable of smallest degree.
    std::size_t best = kMaxVars;
    unsigned best_deg = ~0u;
    for (std::uint32_t s = sa; s != 0; s &= s - 1) {
        const std::size_t v = static_cast<std::size_t>(std::countr_zero(s));
        const unsigned d = std::max(a.degree_in(v), b.degree_in(v));
        if (d < best_deg) {
            best_deg = d;
            best = v;
        }
    }
    return primitive_gcd_in(a, b, best);
}

}  // namespace casimir
