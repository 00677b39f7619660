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

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "casimir/polynomial.hpp"

namespace casimir {

/// Raised for mathematically invalid requests (division by zero, degenerate
/// structures, grade mismatches).
class MathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised for malformed user input; carries a 1-based column when known.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t column)
        : std::invalid_argument(what + " (column " + std::to_string(column) + ")"), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// An ordered list of distinct coordinate names.
class Chart {
public:
    explicit Chart(std::vector<std::string> names);

    std::size_t dim() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    /// Throws MathError for unknown names.
    std::size_t index_of(std::string_view name) const;
    bool contains(std::string_view name) const;

    friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);
bool same_chart(const ChartPtr& a, const ChartPtr& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where);

/// Exact rational function over Q in canonical form: gcd(num, den) = 1,
/// den monic in graded lexicographic order, zero stored as 0/1.
class ScalarField {
public:
    ScalarField() : den_(1) {}
    ScalarField(long c) : num_(c), den_(1) {}  // NOLINT(implicit)
    ScalarField(const Rational& c) : num_(c), den_(1) {}  // NOLINT(implicit)
    ScalarField(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(implicit)
    /// Normalizes; throws MathError if `den` is zero.
    ScalarField(const Polynomial& num, const Polynomial& den);

    static ScalarField variable(std::size_t var) { return ScalarField(Polynomial::variable(var)); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    /// Number of stored monomials; the pivot heuristic in exact elimination.
    std::size_t complexity() const { return num_.size() + den_.size(); }

    ScalarField operator-() const;
    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
    /// Throws MathError when `b` is zero.
    friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
    ScalarField& operator+=(const ScalarField& b) { return *this = *this + b; }
    ScalarField& operator-=(const ScalarField& b) { return *this = *this - b; }
    ScalarField& operator*=(const ScalarField& b) { return *this = *this * b; }
    ScalarField& operator/=(const ScalarField& b) { return *this = *this / b; }

    friend bool operator==(const ScalarField& a, const ScalarField& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ScalarField& a, const ScalarField& b) { return !(a == b); }

    ScalarField pow(int e) const;

    /// Canonical infix rendering, parseable back with `parse_expression`.
    std::string to_string(const Chart& chart) const;

private:
    Polynomial num_;
    Polynomial den_;
};

ScalarField partial(const ScalarField& a, std::size_t var);
/// Throws MathError for a coordinate outside the chart.
ScalarField partial(const ScalarField& a, const Chart& chart, std::string_view coord);
inline bool is_zero(const ScalarField& a) { return a.is_zero(); }

/// Parses identifiers, integer literals, + - * / ^ (integer exponents) and
/// parentheses. Throws ParseError with the offending column.
ScalarField parse_expression(std::string_view text, const Chart& chart);

}  // namespace casimir
