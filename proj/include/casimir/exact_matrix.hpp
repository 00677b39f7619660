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

#include <optional>
#include <vector>

#include "casimir/scalar_field.hpp"

namespace casimir {

/// Dense row-major matrix over the rational-function field.
using Matrix = std::vector<std::vector<ScalarField>>;

Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// Gaussian elimination; the pivot is the nonzero entry of least complexity.
ScalarField determinant(Matrix a);
/// Generic rank over the fraction field.
std::size_t rank(Matrix a);
/// Empty when the matrix is singular over the fraction field.
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace casimir
