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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace casimir {

/// Upper bound on the number of chart coordinates (monomial exponent slots).
inline constexpr std::size_t kMaxVars = 32;

using Rational = mpq_class;

/// Exponent vector of a monomial, ordered graded-lexicographically with
/// variable 0 the largest.
struct Monomial {
    std::array<std::uint8_t, kMaxVars> exp{};
    std::uint16_t deg = 0;

    static Monomial variable(std::size_t var, unsigned power = 1);

    bool is_one() const { return deg == 0; }
    std::uint32_t support() const;
    bool divides(const Monomial& other) const;

    Monomial operator*(const Monomial& rhs) const;
    /// Requires `rhs.divides(*this)`.
    Monomial operator/(const Monomial& rhs) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

/// Graded lexicographic comparison: true if `a` is strictly larger than `b`.
bool grlex_greater(const Monomial& a, const Monomial& b);

Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// sorted in decreasing graded lexicographic order with no zero coefficients.
class Polynomial {
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Polynomial() = default;
    Polynomial(const Rational& c);  // NOLINT(implicit)
    Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(implicit)
    static Polynomial variable(std::size_t var);
    static Polynomial monomial(const Monomial& m, const Rational& c);
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const;
    Rational constant_value() const;

    /// Requires a nonzero polynomial.
    const Term& leading() const { return terms_.front(); }
    /// Bit set of variables that occur.
    std::uint32_t support() const;
    unsigned degree_in(std::size_t var) const;
    unsigned total_degree() const;

    Polynomial monic() const;
    Polynomial scaled(const Rational& c) const;
    Polynomial shifted(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const;
    Polynomial partial(std::size_t var) const;

    /// Coefficients with respect to `var`: entry d holds the coefficient of var^d.
    std::vector<Polynomial> coefficients_in(std::size_t var) const;
    static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, std::size_t var);

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::vector<Term> terms_;
    void add_scaled(const Polynomial& rhs, const Rational& c, const Monomial& shift);
};

/// Exact quotient `a / b`, or nullopt when `b` does not divide `a`.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace casimir
