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
#include <optional>
#include <vector>

#include "casimir/exact_matrix.hpp"
#include "casimir/exterior.hpp"

namespace casimir {

/// (-1)^{(p-1)p/2}.
inline int reversal_sign(int p) { return ((p * (p - 1) / 2) & 1) ? -1 : 1; }

/// A top-degree form Ω with nonzero coefficient and its dual Ω̃, ⟨Ω, Ω̃⟩ = 1.
class VolumeStructure {
public:
    /// Throws MathError unless `omega` is a nonzero top-degree form.
    explicit VolumeStructure(Form omega);

    const ChartPtr& chart() const { return omega_.chart(); }
    const Form& omega() const { return omega_; }
    const Multivector& dual() const { return dual_; }

    /// Ψ(P) = (-1)^{(p-1)p/2} i_P Ω.
    Form psi(const Multivector& P) const;
    /// Ψ⁻¹(η) = j_η Ω̃.
    Multivector psi_inverse(const Form& eta) const;
    /// D = -Ψ⁻¹ ∘ d ∘ Ψ.
    Multivector koszul_D(const Multivector& P) const;
    /// (-1)^{p-1} D(P): the operator -Ψ₀⁻¹∘d∘Ψ₀ for the unsigned Ψ₀(P) = i_P Ω.
    /// With the signed Ψ, D itself generates the bracket only up to these signs.
    Multivector generator_D(const Multivector& P) const;
    /// [P,Q] = (-1)^p (D'(P∧Q) - D'(P)∧Q - (-1)^p P∧D'(Q)) with D' = generator_D.
    Multivector schouten_generator(const Multivector& P, const Multivector& Q) const;
    /// 2Λ∧D(Λ) - D(Λ∧Λ); zero exactly when Λ is Poisson.
    Multivector poisson_defect(const Multivector& L) const;

private:
    Form omega_;
    Multivector dual_;
};

/// Schouten bracket by Leibniz expansion of each term into vector fields
/// (f ∂_{i1})∧∂_{i2}∧… and Lie brackets.
Multivector schouten(const Multivector& P, const Multivector& Q);

/// Schouten bracket reconstructed from i_{[P,Q]} = [[i_P, d], i_Q] evaluated
/// on every coordinate test form.
Multivector schouten_koszul_formula(const Multivector& P, const Multivector& Q);

/// The graded commutator [[i_P, d], i_Q] applied to η.
Form koszul_operator(const Multivector& P, const Multivector& Q, const Form& eta);

/// Λ^#, extended multiplicatively to forms of every grade; Λ^#(dx_j) = Σ_i Λ^{ji} ∂_i.
Multivector bivector_sharp(const Multivector& L, const Form& zeta);

/// Λ(dh1, dh2).
ScalarField poisson_bracket(const Multivector& L, const ScalarField& h1, const ScalarField& h2);

struct JacobiReport {
    bool holds = true;
    /// First coordinate triple i<j<k whose cyclic sum is nonzero, with the sum.
    std::optional<std::array<std::size_t, 3>> failing_triple;
    ScalarField failing_value;
    std::size_t failing_triples = 0;
};

/// Coordinate Jacobi sum {x_i,{x_j,x_k}} + cyclic over all triples.
JacobiReport jacobi_check(const Multivector& L, bool stop_at_first = true);
bool is_poisson(const Multivector& L);

struct PoissonRoutes {
    bool jacobi_sum = false;
    bool schouten_zero = false;
    bool d_condition = false;
    bool agree() const { return jacobi_sum == schouten_zero && schouten_zero == d_condition; }
};

/// Evaluates all three Poisson criteria independently.
PoissonRoutes poisson_routes(const Multivector& L, const VolumeStructure& volume);

/// Δ = d∘i_Λ - i_Λ∘d. This is the sign under which Λ^# maps the Koszul
/// bracket of forms to the Schouten bracket with i_Λ as defined here.
Form koszul_delta(const Multivector& L, const Form& eta);

/// {{ζ,η}} = (-1)^p (Δ(ζ∧η) - Δ(ζ)∧η - (-1)^p ζ∧Δ(η)).
Form koszul_bracket_forms(const Form& zeta, const Form& eta, const Multivector& L);

/// Generic rank of the coefficient matrix of a bivector.
std::size_t bivector_rank(const Multivector& L);

}  // namespace casimir
