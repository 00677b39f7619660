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

#include "casimir/scalar_field.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace casimir {

// ------------------------------------------------------------------- Chart

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw MathError("chart must have at least one coordinate");
    if (names_.size() > kMaxVars) throw MathError("chart has more than 32 coordinates");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw MathError("empty coordinate name");
        if (!seen.insert(n).second) throw MathError("duplicate coordinate name '" + n + "'");
    }
}

std::size_t Chart::index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw MathError("unknown coordinate '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names_.begin());
}

bool Chart::contains(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

ChartPtr make_chart(std::vector<std::string> names) { return std::make_shared<const Chart>(std::move(names)); }

bool same_chart(const ChartPtr& a, const ChartPtr& b) { return a == b || (a && b && *a == *b); }

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
    if (!same_chart(a, b)) throw MathError(std::string(where) + ": chart mismatch");
}

// ------------------------------------------------------------- ScalarField

ScalarField::ScalarField(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw MathError("division by the zero function");
    if (num.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (den.is_constant()) {
        num_ = num.scaled(1 / den.constant_value());
        den_ = Polynomial(1);
        return;
    }
    if (auto q = divide_exact(num, den)) {
        num_ = std::move(*q);
        den_ = Polynomial(1);
        return;
    }
    Polynomial g = gcd(num, den);
    Polynomial n = g.is_one() ? num : *divide_exact(num, g);
    Polynomial d = g.is_one() ? den : *divide_exact(den, g);
    Rational lc = d.leading().coeff;
    num_ = n.scaled(1 / lc);
    den_ = d.scaled(1 / lc);
}

ScalarField ScalarField::operator-() const {
    ScalarField r = *this;
    r.num_ = -r.num_;
    return r;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return ScalarField(a.num_ + b.num_);
    if (a.den_ == b.den_) return ScalarField(a.num_ + b.num_, a.den_);
    if (b.den_.is_one()) return ScalarField(a.num_ + b.num_ * a.den_, a.den_);
    if (a.den_.is_one()) return ScalarField(a.num_ * b.den_ + b.num_, b.den_);
    Polynomial g = gcd(a.den_, b.den_);
    Polynomial bd = g.is_one() ? b.den_ : *divide_exact(b.den_, g);
    Polynomial ad = g.is_one() ? a.den_ : *divide_exact(a.den_, g);
    return ScalarField(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) { return a + (-b); }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return ScalarField(a.num_ * b.num_);
    // Cross-cancel; the inputs are already reduced.
    Polynomial g1 = gcd(a.num_, b.den_);
    Polynomial g2 = gcd(b.num_, a.den_);
    Polynomial an = g1.is_one() ? a.num_ : *divide_exact(a.num_, g1);
    Polynomial bd = g1.is_one() ? b.den_ : *divide_exact(b.den_, g1);
    Polynomial bn = g2.is_one() ? b.num_ : *divide_exact(b.num_, g2);
    Polynomial ad = g2.is_one() ? a.den_ : *divide_exact(a.den_, g2);
    ScalarField r;
    Polynomial den = ad * bd;
    Rational lc = den.leading().coeff;
    r.num_ = (an * bn).scaled(1 / lc);
    r.den_ = den.scaled(1 / lc);
    return r;
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    if (b.is_zero()) throw MathError("division by the zero function");
    ScalarField inv;
    Rational lc = b.num_.leading().coeff;
    inv.num_ = b.den_.scaled(1 / lc);
    inv.den_ = b.num_.scaled(1 / lc);
    return a * inv;
}

ScalarField ScalarField::pow(int e) const {
    if (e < 0) return ScalarField(1) / pow(-e);
    ScalarField r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

namespace {

bool single_factor(const Polynomial& p) {
    if (p.size() != 1 || p.leading().coeff != 1) return false;
    std::uint32_t s = p.leading().mono.support();
    return s != 0 && (s & (s - 1)) == 0;
}

}  // namespace

std::string ScalarField::to_string(const Chart& chart) const {
    std::string n = num_.to_string(chart.names());
    if (den_.is_one()) return n;
    if (num_.size() > 1) n = "(" + n + ")";
    std::string d = den_.to_string(chart.names());
    if (!single_factor(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

ScalarField partial(const ScalarField& a, std::size_t var) {
    const Polynomial& n = a.numerator();
    const Polynomial& d = a.denominator();
    if (d.is_one()) return ScalarField(n.partial(var));
    Polynomial dn = n.partial(var);
    Polynomial dd = d.partial(var);
    if (dd.is_zero()) return ScalarField(dn, d);
    return ScalarField(dn * d - n * dd, d * d);
}

ScalarField partial(const ScalarField& a, const Chart& chart, std::string_view coord) {
    return partial(a, chart.index_of(coord));
}

// ------------------------------------------------------------------ parser

namespace {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

    ScalarField parse() {
        ScalarField v = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    std::string_view text_;
    const Chart& chart_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarField expr() {
        ScalarField v = term();
        for (;;) {
            if (accept('+')) v = v + term();
            else if (accept('-')) v = v - term();
            else return v;
        }
    }

    ScalarField term() {
        ScalarField v = unary();
        for (;;) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                ScalarField d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v = v / d;
            } else {
                return v;
            }
        }
    }

    ScalarField unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    ScalarField power() {
        ScalarField base = primary();
        if (!accept('^')) return base;
        bool negative = false;
        bool paren = accept('(');
        if (accept('-')) negative = true;
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("exponent must be an integer literal");
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string digits(text_.substr(start, pos_ - start));
        if (digits.size() > 3) fail("exponent too large");
        int e = std::stoi(digits);
        if (paren && !accept(')')) fail("expected ')'");
        if (negative && base.is_zero()) fail("zero raised to a negative power");
        return base.pow(negative ? -e : e);
    }

    ScalarField primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarField v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return ScalarField(Rational(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (!chart_.contains(name)) {
                pos_ = start;
                fail("unknown coordinate '" + std::string(name) + "'");
            }
            return ScalarField::variable(chart_.index_of(name));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

}  // namespace

ScalarField parse_expression(std::string_view text, const Chart& chart) {
    return ExpressionParser(text, chart).parse();
}

}  // namespace casimir
