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

#include "casimir/exterior.hpp"

#include <algorithm>

namespace casimir {

namespace {

constexpr IndexSet bit(std::size_t i) { return IndexSet{1} << i; }
constexpr IndexSet below(std::size_t i) { return bit(i) - 1; }
constexpr int parity_sign(int n) { return (n & 1) ? -1 : 1; }

}  // namespace

std::vector<std::size_t> set_indices(IndexSet s) {
    std::vector<std::size_t> out;
    for (; s != 0; s &= s - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    return out;
}

int concat_sign(IndexSet I, IndexSet J) {
    if (I & J) return 0;
    int inversions = 0;
    for (IndexSet s = J; s != 0; s &= s - 1) {
        std::size_t j = static_cast<std::size_t>(std::countr_zero(s));
        inversions += std::popcount(I >> (j + 1));
    }
    return parity_sign(inversions);
}

// ------------------------------------------------------------------ Tensor

template <TensorKind K>
Tensor<K>::Tensor(ChartPtr chart, int grade) : chart_(std::move(chart)), grade_(grade) {
    if (!chart_) throw MathError("tensor requires a chart");
    if (grade < 0) throw MathError("negative tensor grade");
}

template <TensorKind K>
Tensor<K> Tensor<K>::scalar(ChartPtr chart, const ScalarField& value) {
    Tensor t(std::move(chart), 0);
    t.add(0, value);
    return t;
}

template <TensorKind K>
Tensor<K> Tensor<K>::basis(ChartPtr chart, const std::vector<std::size_t>& indices, const ScalarField& coeff) {
    Tensor t(chart, static_cast<int>(indices.size()));
    IndexSet acc = 0;
    int sign = 1;
    for (std::size_t i : indices) {
        if (i >= t.chart_->dim()) throw MathError("basis index outside the chart");
        IndexSet b = bit(i);
        if (acc & b) return t;
        sign *= concat_sign(acc, b);
        acc |= b;
    }
    t.add(acc, sign > 0 ? coeff : -coeff);
    return t;
}

template <TensorKind K>
Tensor<K> Tensor<K>::basis(ChartPtr chart, const std::vector<std::string>& names, const ScalarField& coeff) {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names) idx.push_back(chart->index_of(n));
    return basis(std::move(chart), idx, coeff);
}

template <TensorKind K>
ScalarField Tensor<K>::coefficient(IndexSet I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? ScalarField() : it->second;
}

template <TensorKind K>
ScalarField Tensor<K>::value() const {
    if (grade_ != 0 && !terms_.empty()) throw MathError("value() requires a grade-0 tensor");
    return coefficient(0);
}

template <TensorKind K>
void Tensor<K>::add(IndexSet I, const ScalarField& c) {
    if (set_size(I) != grade_) throw MathError("index set size does not match the tensor grade");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(I, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

template <TensorKind K>
Tensor<K> Tensor<K>::operator-() const {
    Tensor r = *this;
    for (auto& [I, c] : r.terms_) c = -c;
    return r;
}

template <TensorKind K>
Tensor<K>& Tensor<K>::operator+=(const Tensor& rhs) {
    require_same_chart(chart_, rhs.chart_, "tensor addition");
    if (rhs.terms_.empty()) return *this;
    if (terms_.empty()) {
        grade_ = rhs.grade_;
        terms_ = rhs.terms_;
        return *this;
    }
    if (grade_ != rhs.grade_) throw MathError("adding tensors of different grades");
    for (const auto& [I, c] : rhs.terms_) add(I, c);
    return *this;
}

template <TensorKind K>
Tensor<K>& Tensor<K>::operator-=(const Tensor& rhs) {
    return *this += -rhs;
}

template <TensorKind K>
Tensor<K>& Tensor<K>::operator*=(const ScalarField& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [I, v] : terms_) v *= c;
    return *this;
}

template <TensorKind K>
std::string Tensor<K>::to_string() const {
    if (terms_.empty()) return "0";
    const char* prefix = K == TensorKind::Form ? "d" : "∂";
    std::string out;
    bool first = true;
    for (const auto& [I, c] : terms_) {
        std::string coeff = c.to_string(*chart_);
        if (!first) out += " + ";
        first = false;
        if (grade_ == 0) {
            out += coeff;
            continue;
        }
        if (c.numerator().size() > 1) coeff = "(" + coeff + ")";
        out += coeff + " · ";
        bool first_factor = true;
        for (std::size_t i : set_indices(I)) {
            if (!first_factor) out += "∧";
            first_factor = false;
            out += prefix + chart_->name(i);
        }
    }
    return out;
}

template class Tensor<TensorKind::Form>;
template class Tensor<TensorKind::Multivector>;

// --------------------------------------------------------------- algebra

template <TensorKind K>
Tensor<K> wedge(const Tensor<K>& a, const Tensor<K>& b) {
    require_same_chart(a.chart(), b.chart(), "wedge");
    Tensor<K> r(a.chart(), a.grade() + b.grade());
    if (a.grade() + b.grade() > static_cast<int>(a.chart()->dim())) return r;
    for (const auto& [I, x] : a.terms()) {
        for (const auto& [J, y] : b.terms()) {
            int s = concat_sign(I, J);
            if (s == 0) continue;
            ScalarField c = x * y;
            r.add(I | J, s > 0 ? c : -c);
        }
    }
    return r;
}

template Form wedge(const Form&, const Form&);
template Multivector wedge(const Multivector&, const Multivector&);

template <TensorKind K>
Tensor<K> divided_power(const Tensor<K>& a, int e) {
    if (e < 0) throw MathError("negative divided power");
    Tensor<K> r = Tensor<K>::scalar(a.chart(), 1);
    for (int i = 1; i <= e; ++i) r = wedge(r, a) * ScalarField(Rational(1, i));
    return r;
}

template Form divided_power(const Form&, int);
template Multivector divided_power(const Multivector&, int);

ScalarField pair(const Form& eta, const Multivector& P) {
    require_same_chart(eta.chart(), P.chart(), "pair");
    ScalarField s;
    if (eta.grade() != P.grade()) return s;
    const auto& small = eta.terms().size() <= P.terms().size() ? eta.terms() : P.terms();
    for (const auto& [I, c] : small) {
        ScalarField x = eta.coefficient(I);
        if (x.is_zero()) continue;
        ScalarField y = P.coefficient(I);
        if (y.is_zero()) continue;
        s += x * y;
    }
    return s;
}

Form interior(const Multivector& P, const Form& eta) {
    require_same_chart(P.chart(), eta.chart(), "interior product i_P");
    const int q = eta.grade() - P.grade();
    if (q < 0) return Form(eta.chart(), 0);
    Form r(eta.chart(), q);
    for (const auto& [J, pj] : P.terms()) {
        std::vector<std::size_t> js = set_indices(J);
        for (const auto& [Kset, ek] : eta.terms()) {
            if ((J & Kset) != J) continue;
            // i_{∂j1} ∘ … ∘ i_{∂jp}: the last vector contracts first, each
            // into the leading slot of what remains.
            IndexSet S = Kset;
            int sign = 1;
            for (auto it = js.rbegin(); it != js.rend(); ++it) {
                sign *= parity_sign(std::popcount(S & below(*it)));
                S &= ~bit(*it);
            }
            ScalarField c = pj * ek;
            r.add(S, sign > 0 ? c : -c);
        }
    }
    return r;
}

Multivector interior(const Form& eta, const Multivector& P) {
    require_same_chart(eta.chart(), P.chart(), "interior product j_eta");
    const int q = P.grade() - eta.grade();
    if (q < 0) return Multivector(P.chart(), 0);
    Multivector r(P.chart(), q);
    for (const auto& [J, ej] : eta.terms()) {
        std::vector<std::size_t> js = set_indices(J);
        for (const auto& [Kset, pk] : P.terms()) {
            if ((J & Kset) != J) continue;
            // j_{α1} ∘ … ∘ j_{αq}: the last form contracts first, each into
            // the trailing slot of what remains.
            IndexSet S = Kset;
            int sign = 1;
            for (auto it = js.rbegin(); it != js.rend(); ++it) {
                sign *= parity_sign(std::popcount(S >> (*it + 1)));
                S &= ~bit(*it);
            }
            ScalarField c = ej * pk;
            r.add(S, sign > 0 ? c : -c);
        }
    }
    return r;
}

Form exterior_derivative(const Form& eta) {
    const std::size_t m = eta.chart()->dim();
    Form r(eta.chart(), eta.grade() + 1);
    if (eta.grade() + 1 > static_cast<int>(m)) return r;
    for (const auto& [Kset, h] : eta.terms()) {
        for (std::size_t i = 0; i < m; ++i) {
            if (Kset & bit(i)) continue;
            ScalarField dh = partial(h, i);
            if (dh.is_zero()) continue;
            r.add(Kset | bit(i), parity_sign(std::popcount(Kset & below(i))) > 0 ? dh : -dh);
        }
    }
    return r;
}

Form differential(const ChartPtr& chart, const ScalarField& h) { return d(Form::scalar(chart, h)); }

Multivector coordinate_vector(const ChartPtr& chart, std::size_t i) {
    return Multivector::basis(chart, std::vector<std::size_t>{i});
}

Form coordinate_form(const ChartPtr& chart, std::size_t i) { return Form::basis(chart, std::vector<std::size_t>{i}); }

ScalarField top_coefficient(const Form& eta) {
    const std::size_t m = eta.chart()->dim();
    if (eta.is_zero()) return {};
    if (eta.grade() != static_cast<int>(m)) throw MathError("top_coefficient requires a top-degree form");
    return eta.coefficient(below(m));
}

ScalarField apply(const Multivector& X, const ScalarField& h) {
    if (X.is_zero()) return {};
    if (X.grade() != 1) throw MathError("apply requires a vector field");
    ScalarField s;
    for (const auto& [I, c] : X.terms()) {
        ScalarField dh = partial(h, static_cast<std::size_t>(std::countr_zero(I)));
        if (!dh.is_zero()) s += c * dh;
    }
    return s;
}

Multivector lie_bracket(const Multivector& X, const Multivector& Y) {
    require_same_chart(X.chart(), Y.chart(), "lie_bracket");
    Multivector r(X.chart(), 1);
    for (std::size_t i = 0; i < X.chart()->dim(); ++i) {
        ScalarField c = apply(X, Y.coefficient(bit(i))) - apply(Y, X.coefficient(bit(i)));
        r.add(bit(i), c);
    }
    return r;
}

template <TensorKind From, TensorKind To>
Tensor<To> extend_multiplicatively(const Tensor<From>& t, const std::vector<Tensor<To>>& images) {
    const ChartPtr& chart = t.chart();
    if (images.size() != chart->dim()) throw MathError("one image per coordinate is required");
    Tensor<To> r(chart, t.grade());
    // Products of images for each visited index prefix, shared between terms.
    std::map<IndexSet, Tensor<To>> prefix;
    prefix.emplace(0, Tensor<To>::scalar(chart, 1));
    for (const auto& [I, c] : t.terms()) {
        IndexSet acc = 0;
        const Tensor<To>* cur = &prefix.at(0);
        for (std::size_t i : set_indices(I)) {
            IndexSet next = acc | (IndexSet{1} << i);
            auto it = prefix.find(next);
            if (it == prefix.end()) it = prefix.emplace(next, wedge(*cur, images[i])).first;
            cur = &it->second;
            acc = next;
        }
        r += *cur * c;
    }
    return r;
}

template Multivector extend_multiplicatively(const Form&, const std::vector<Multivector>&);
template Form extend_multiplicatively(const Multivector&, const std::vector<Form>&);

namespace {

template <TensorKind K>
std::vector<std::vector<ScalarField>> matrix_of(const Tensor<K>& t) {
    const std::size_t m = t.chart()->dim();
    std::vector<std::vector<ScalarField>> M(m, std::vector<ScalarField>(m));
    if (t.is_zero()) return M;
    if (t.grade() != 2) throw MathError("coefficient_matrix requires grade 2");
    for (const auto& [I, c] : t.terms()) {
        auto ij = set_indices(I);
        M[ij[0]][ij[1]] = c;
        M[ij[1]][ij[0]] = -c;
    }
    return M;
}

}  // namespace

std::vector<std::vector<ScalarField>> coefficient_matrix(const Form& two_form) { return matrix_of(two_form); }
std::vector<std::vector<ScalarField>> coefficient_matrix(const Multivector& bivector) { return matrix_of(bivector); }

}  // namespace casimir
