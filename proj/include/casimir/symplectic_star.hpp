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

#include <vector>

#include "casimir/exact_matrix.hpp"
#include "casimir/exterior.hpp"
#include "casimir/volume_duality.hpp"

namespace casimir {

/// Nondegenerate 2-form ω₀ on a 2n-chart with its inverse bivector Λ₀,
/// where Λ₀^# inverts ω₀^♭(X) = -ω₀(X,·). Immutable after construction.
class AlmostSymplectic {
public:
    /// Throws MathError if the chart is odd-dimensional, ω₀ is not a 2-form,
    /// or det ω₀ vanishes identically.
    explicit AlmostSymplectic(Form omega0);

    /// ω₀ = Σ dx_i∧dx_{n+i} on the first and second halves of the chart.
    static AlmostSymplectic darboux(const ChartPtr& chart);

    const ChartPtr& chart() const { return omega0_.chart(); }
    int n() const { return n_; }
    const Form& omega0() const { return omega0_; }
    const Multivector& lambda0() const { return lambda0_; }
    /// Ω = ω₀ⁿ/n! together with Ω̃ = Λ₀ⁿ/n!.
    const VolumeStructure& volume() const { return volume_; }
    const Form& omega() const { return volume_.omega(); }
    const ScalarField& determinant() const { return det_; }

    /// Λ₀^#, multiplicative over wedge.
    Multivector sharp(const Form& zeta) const;
    /// Inverse of sharp on every grade.
    Form sharp_inverse(const Multivector& P) const;
    /// ∗φ = (-1)^{(p-1)p/2} i_{Λ₀^#(φ)} Ω.
    Form star(const Form& phi) const;
    bool is_effective(const Form& psi) const;
    /// [ψ_p, ψ_{p-2}, …] with φ = Σ_s ψ_{p-2s}∧ω₀^s/s!, each ψ effective.
    /// Throws MathError when grade φ > n.
    std::vector<Form> lepage_decompose(const Form& phi) const;
    /// δ = ∗d∗.
    Form codifferential(const Form& phi) const;
    /// 2σ∧δσ - δ(σ∧σ).
    Form complementary_defect(const Form& sigma) const;
    bool check_complementary(const Form& sigma) const { return complementary_defect(sigma).is_zero(); }

private:
    Form omega0_;
    int n_ = 0;
    ScalarField det_;
    Multivector lambda0_;
    VolumeStructure volume_;
    std::vector<Multivector> sharp_images_;
    std::vector<Form> flat_images_;
};

}  // namespace casimir
