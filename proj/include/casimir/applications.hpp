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
#include <string>
#include <vector>

#include "casimir/casimir_odd.hpp"
#include "casimir/exact_matrix.hpp"

namespace casimir {

// ------------------------------------------------------------------ Dirac

/// Second-class constraints f₁..f_{2n-2k} on a symplectic chart with
/// c = ({f_i,f_j}₀)⁻¹, so Σ_j {f_i,f_j}₀ c_jk = δ_ik.
struct DiracData {
    AlmostSymplectic structure;
    std::vector<ScalarField> constraints;
    Matrix gram;
    Matrix cmatrix;
    int k = 0;
};

/// Throws MathError for an odd number of constraints or a singular ({f_i,f_j}₀).
DiracData make_dirac(AlmostSymplectic structure, std::vector<ScalarField> constraints);
/// σ = ω₀ + Σ_{i<j} c_ij df_i∧df_j.
Form dirac_sigma(const DiracData& data);
/// Λ₀ + Σ_{i<j} c_ij X_{f_i}∧X_{f_j}.
Multivector dirac_bivector(const DiracData& data);
/// {h₁,h₂}Ω = (1/f) dh₁∧dh₂∧ω₀^{k-1}/(k-1)!∧df₁∧…∧df_{2n-2k}.
ScalarField dirac_bracket(const DiracData& data, const ScalarField& h1, const ScalarField& h2);
EvenProblem dirac_problem(const DiracData& data);

// ------------------------------------------------------------ nonholonomic

/// Hamiltonian side of a system with linear constraints ζ^i = ζ^i_s(q) dq^s on
/// the cotangent chart (q¹..qⁿ, p₁..p_n), with ω₀ = dp_s∧dq^s.
struct NonholonomicData {
    AlmostSymplectic structure;
    std::size_t n = 0;
    ScalarField hamiltonian;
    std::vector<Form> zeta;
    /// f^i = ζ^i_s ∂H/∂p_s.
    std::vector<ScalarField> f;
    /// Z^i = ζ^i_s ∂/∂p_s.
    std::vector<Multivector> Z;
    /// 𝒞^{ij} = ζ^i_s (∂²H/∂p_s∂p_t) ζ^j_t and its inverse 𝒞_ij.
    Matrix C;
    Matrix C_inverse;
    int k = 0;
};

/// ω₀ = Σ dp_s∧dq^s on a chart whose first half are the q's.
AlmostSymplectic cotangent_structure(const ChartPtr& chart);
/// Throws MathError when ζ has dp components or p-dependent coefficients, or 𝒞 is singular.
NonholonomicData make_nonholonomic(const ChartPtr& chart, ScalarField hamiltonian, std::vector<Form> zeta);
/// Λ_nh = Λ₀ + 𝒞_lm X_{f^l}∧Z^m + ½ 𝒞_ij {f^j,f^l}₀ 𝒞_lm Z^i∧Z^m.
Multivector nonholonomic_bivector(const NonholonomicData& data);
/// σ = ω₀ - 𝒞_lm df^l∧ζ^m + ½ 𝒞_ij {f^j,f^l}₀ 𝒞_lm ζ^i∧ζ^m.
Form nonholonomic_sigma(const NonholonomicData& data);
/// df¹,…,df^{n-k}, ζ¹,…,ζ^{n-k}.
std::vector<Form> nonholonomic_kernel(const NonholonomicData& data);
/// The term-by-term expansion of the constrained bracket.
ScalarField nonholonomic_bracket(const NonholonomicData& data, const ScalarField& h1, const ScalarField& h2);
EvenProblem nonholonomic_problem(const NonholonomicData& data);

// ---------------------------------------------------------------- fixtures

struct BracketEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    ScalarField value;
};

/// Coordinate brackets {x_i, x_j}, i < j, that are nonzero.
std::vector<BracketEntry> bracket_entries(const Multivector& bivector);
Multivector bivector_from_entries(const ChartPtr& chart, const std::vector<BracketEntry>& entries);

/// A worked problem with its reference data. Exactly one of even/odd is set.
struct Fixture {
    std::string name;
    std::optional<EvenProblem> even;
    std::optional<OddProblem> odd;
    /// Reference bracket table, i < j, nonzero entries only.
    std::vector<BracketEntry> expected;
    std::optional<ScalarField> expected_f;
    std::optional<ScalarField> expected_g;
    std::optional<std::size_t> expected_rank;
    /// Closed-form bivector of the structure, built without the construction.
    Multivector reference;

    const ChartPtr& chart() const { return reference.chart(); }
};

/// Periodic Toda lattice on (a₁..a_n, b₁..b_n): Casimirs Σb, Πa, k = n-1. Requires n ≥ 3.
Fixture toda(int n);
/// The quadratic companion with the same Casimirs. Requires n ≥ 3.
Fixture volterra_companion(int n);
/// Linear bracket on 3×3 matrices with Casimirs tr, y₁z₂+y₂z₃+y₃z₁, z₁z₂z₃.
Fixture gl3();
/// {x,y} = F_z, {x,z} = -F_y, {y,z} = F_x on (x,y,z); requires ∂F/∂z ≢ 0.
Fixture r3_jacobian(const std::string& F = "x^2 + y^2 + z^2");

/// Accepts "toda3", "toda 3", "toda(3)", "volterra_companion(4)", "gl3",
/// "r3_jacobian", "r3_jacobian(<expr>)". Throws std::invalid_argument listing
/// the available fixtures for unknown names.
Fixture fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace casimir
