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

#include "casimir/exact_matrix.hpp"

#include <limits>
#include <utility>

namespace casimir {

Matrix identity_matrix(std::size_t n) {
    Matrix m(n, std::vector<ScalarField>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.empty()) return {};
    const std::size_t r = a.size(), inner = b.size(), c = b.empty() ? 0 : b[0].size();
    if (a[0].size() != inner) throw MathError("matrix dimensions do not match");
    Matrix out(r, std::vector<ScalarField>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j)
                if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix t(a[0].size(), std::vector<ScalarField>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

// Reduces `a` (with `aug` carried along) to row echelon form. Returns the
// pivot columns; `sign` tracks row swaps and `pivots` the pivot values.
struct Elimination {
    std::vector<std::size_t> pivot_cols;
    std::vector<ScalarField> pivots;
    int sign = 1;
};

Elimination eliminate(Matrix& a, Matrix* aug, bool full) {
    Elimination e;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows, best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            std::size_t cost = a[i][c].complexity();
            if (cost < best_cost) best = i, best_cost = cost;
        }
        if (best == rows) continue;
        if (best != r) {
            std::swap(a[best], a[r]);
            if (aug) std::swap((*aug)[best], (*aug)[r]);
            e.sign = -e.sign;
        }
        const ScalarField piv = a[r][c];
        for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            ScalarField factor = a[i][c] / piv;
            for (std::size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= factor * a[r][j];
            if (aug)
                for (std::size_t j = 0; j < (*aug)[i].size(); ++j)
                    if (!(*aug)[r][j].is_zero()) (*aug)[i][j] -= factor * (*aug)[r][j];
        }
        e.pivot_cols.push_back(c);
        e.pivots.push_back(piv);
        ++r;
    }
    return e;
}

}  // namespace

ScalarField determinant(Matrix a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw MathError("determinant of a non-square matrix");
    if (n == 0) return 1;
    Elimination e = eliminate(a, nullptr, false);
    if (e.pivots.size() < n) return {};
    ScalarField det = e.sign;
    for (const auto& p : e.pivots) det *= p;
    return det;
}

std::size_t rank(Matrix a) { return eliminate(a, nullptr, false).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw MathError("inverse of a non-square matrix");
    Matrix work = a;
    Matrix inv = identity_matrix(n);
    Elimination e = eliminate(work, &inv, true);
    if (e.pivots.size() < n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        ScalarField scale = ScalarField(1) / work[i][i];
        for (auto& v : inv[i]) v *= scale;
    }
    return inv;
}

}  // namespace casimir
