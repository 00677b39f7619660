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

#include <random>
#include <string>
#include <vector>

#include "casimir/exterior.hpp"

namespace casimir::testing {

inline ChartPtr chart_of_dim(std::size_t m) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i + 1));
    return make_chart(names);
}

/// Random polynomial with small integer coefficients, at most `terms` terms of degree <= `maxdeg`.
inline ScalarField random_field(std::mt19937& rng, std::size_t vars, int terms = 2, int maxdeg = 2) {
    std::uniform_int_distribution<int> coeff(-3, 3), var(0, static_cast<int>(vars) - 1), deg(0, maxdeg);
    std::vector<Polynomial::Term> ts;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int total = deg(rng);
        for (int k = 0; k < total; ++k) m = m * Monomial::variable(static_cast<std::size_t>(var(rng)));
        ts.push_back({m, Rational(coeff(rng))});
    }
    return ScalarField(Polynomial::from_terms(std::move(ts)));
}

/// Random tensor of the given grade with roughly `density` of the basis populated.
template <TensorKind K>
Tensor<K> random_tensor(std::mt19937& rng, const ChartPtr& chart, int grade, double density = 0.4,
                        int terms = 2, int maxdeg = 2) {
    const std::size_t m = chart->dim();
    Tensor<K> t(chart, grade);
    std::bernoulli_distribution keep(density);
    for (IndexSet s = 0; s < (IndexSet{1} << m); ++s) {
        if (set_size(s) != grade || !keep(rng)) continue;
        t.add(s, random_field(rng, m, terms, maxdeg));
    }
    return t;
}

inline Form random_form(std::mt19937& rng, const ChartPtr& c, int grade, double density = 0.4, int terms = 2,
                        int maxdeg = 2) {
    return random_tensor<TensorKind::Form>(rng, c, grade, density, terms, maxdeg);
}

inline Multivector random_multivector(std::mt19937& rng, const ChartPtr& c, int grade, double density = 0.4,
                                      int terms = 2, int maxdeg = 2) {
    return random_tensor<TensorKind::Multivector>(rng, c, grade, density, terms, maxdeg);
}

}  // namespace casimir::testing
