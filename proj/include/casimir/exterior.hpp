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

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "casimir/scalar_field.hpp"

namespace casimir {

/// A strictly increasing index tuple, stored as a bit set over chart indices.
using IndexSet = std::uint64_t;

inline int set_size(IndexSet s) { return std::popcount(s); }
std::vector<std::size_t> set_indices(IndexSet s);

/// Orders index sets of equal size lexicographically as tuples.
struct TupleOrder {
    bool operator()(IndexSet a, IndexSet b) const {
        if (a == b) return false;
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        IndexSet diff = a ^ b;
        return (a & (diff & (~diff + 1))) != 0;
    }
};

/// Sign of the permutation that sorts the concatenation (I, J); zero if the
/// sets overlap.
int concat_sign(IndexSet I, IndexSet J);

enum class TensorKind { Form, Multivector };

/// Grade-homogeneous antisymmetric tensor: a differential form (basis dx_I)
/// or a multivector field (basis ∂_I). Zero coefficients are never stored.
template <TensorKind K>
class Tensor {
public:
    using Terms = std::map<IndexSet, ScalarField, TupleOrder>;

    Tensor(ChartPtr chart, int grade);

    /// Grade-0 tensor holding `value`.
    static Tensor scalar(ChartPtr chart, const ScalarField& value);
    /// coeff · e_{i1}∧…∧e_{ip} with arbitrary index order; repeated indices give zero.
    static Tensor basis(ChartPtr chart, const std::vector<std::size_t>& indices, const ScalarField& coeff = 1);
    static Tensor basis(ChartPtr chart, const std::vector<std::string>& names, const ScalarField& coeff = 1);

    const ChartPtr& chart() const { return chart_; }
    int grade() const { return grade_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    ScalarField coefficient(IndexSet I) const;
    /// Value of a grade-0 tensor.
    ScalarField value() const;

    /// Adds `c` to the coefficient of the sorted set `I` (|I| must equal the grade).
    void add(IndexSet I, const ScalarField& c);

    Tensor operator-() const;
    Tensor& operator+=(const Tensor& rhs);
    Tensor& operator-=(const Tensor& rhs);
    Tensor& operator*=(const ScalarField& c);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, const ScalarField& c) { return a *= c; }
    friend Tensor operator*(const ScalarField& c, Tensor a) { return a *= c; }

    friend bool operator==(const Tensor& a, const Tensor& b) {
        if (!same_chart(a.chart_, b.chart_)) return false;
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.grade_ == b.grade_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

    /// Sum of "coeff · dx_i∧dx_j" (or "coeff · ∂x_i∧…") terms in index order.
    std::string to_string() const;

private:
    ChartPtr chart_;
    int grade_;
    Terms terms_;
};

using Form = Tensor<TensorKind::Form>;
using Multivector = Tensor<TensorKind::Multivector>;

extern template class Tensor<TensorKind::Form>;
extern template class Tensor<TensorKind::Multivector>;

/// Exterior product; grades add, results above the chart dimension vanish.
template <TensorKind K>
Tensor<K> wedge(const Tensor<K>& a, const Tensor<K>& b);

/// a^e / e! for a tensor of even grade (a^0/0! = 1).
template <TensorKind K>
Tensor<K> divided_power(const Tensor<K>& a, int e);

/// Natural pairing ⟨η, P⟩; zero when grades differ.
ScalarField pair(const Form& eta, const Multivector& P);

/// i_P η, with ⟨i_P η, Q⟩ = (-1)^{(p-1)p/2} ⟨η, P∧Q⟩. Zero when grade P > grade η.
Form interior(const Multivector& P, const Form& eta);

/// j_η P, with ⟨ζ, j_η P⟩ = ⟨ζ∧η, P⟩. Zero when grade η > grade P.
Multivector interior(const Form& eta, const Multivector& P);

inline Form interior_by_multivector(const Multivector& P, const Form& eta) { return interior(P, eta); }
inline Multivector interior_by_form(const Form& eta, const Multivector& P) { return interior(eta, P); }

Form exterior_derivative(const Form& eta);
inline Form d(const Form& eta) { return exterior_derivative(eta); }

/// dh for a function h.
Form differential(const ChartPtr& chart, const ScalarField& h);

/// Coordinate vector field ∂_i or 1-form dx_i.
Multivector coordinate_vector(const ChartPtr& chart, std::size_t i);
Form coordinate_form(const ChartPtr& chart, std::size_t i);

/// Top-degree coefficient relative to dx_1∧…∧dx_m.
ScalarField top_coefficient(const Form& eta);

/// Applies a vector field to a function: X(h) = Σ X^i ∂_i h.
ScalarField apply(const Multivector& X, const ScalarField& h);

/// Lie bracket of vector fields.
Multivector lie_bracket(const Multivector& X, const Multivector& Y);

/// Extends a map on degree-1 basis elements multiplicatively:
/// e_{i1}∧…∧e_{ip} ↦ images[i1]∧…∧images[ip]; grade 0 maps to itself.
template <TensorKind From, TensorKind To>
Tensor<To> extend_multiplicatively(const Tensor<From>& t, const std::vector<Tensor<To>>& images);

/// Exact coefficient matrix of a grade-2 tensor: M(i,j) = coefficient of e_i∧e_j.
std::vector<std::vector<ScalarField>> coefficient_matrix(const Form& two_form);
std::vector<std::vector<ScalarField>> coefficient_matrix(const Multivector& bivector);

}  // namespace casimir
