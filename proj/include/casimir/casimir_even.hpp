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

#include "casimir/symplectic_star.hpp"
#include "casimir/volume_duality.hpp"

namespace casimir {

enum class CheckLevel { Fast, Full };

/// f = ⟨α₁∧…∧α_r, Λ₀^{r/2}/(r/2)!⟩ and the dual form ⟨ω₀^{r/2}/(r/2)!, X_{α₁}∧…∧X_{α_r}⟩.
struct CasimirFactorRoutes {
    ScalarField pairing;
    ScalarField hamiltonian;
    bool agree() const { return pairing == hamiltonian; }
};
CasimirFactorRoutes kernel_factor_routes(const AlmostSymplectic& s, const std::vector<Form>& alphas);

/// f for the casimirs f_i; throws MathError when f ≡ 0 or the routes disagree.
ScalarField casimir_factor(const AlmostSymplectic& s, const std::vector<ScalarField>& casimirs);
/// det({f_i, f_j}₀).
ScalarField casimir_gram_determinant(const AlmostSymplectic& s, const std::vector<ScalarField>& casimirs);

/// Even-dimensional construction data. The kernel forms are df_i for a
/// Casimir problem, or arbitrary 1-forms α_i for the prescribed-kernel variant.
class EvenProblem {
public:
    /// Throws MathError when the Casimir count is not 2n-2k, k < 1, or f ≡ 0.
    EvenProblem(AlmostSymplectic structure, std::vector<ScalarField> casimirs, int k, Form sigma);
    static EvenProblem with_kernel(AlmostSymplectic structure, std::vector<Form> alphas, Form sigma);

    const AlmostSymplectic& structure() const { return structure_; }
    const ChartPtr& chart() const { return structure_.chart(); }
    const std::vector<ScalarField>& casimirs() const { return casimirs_; }
    /// False for the prescribed-kernel variant.
    bool has_casimirs() const { return from_casimirs_; }
    const std::vector<Form>& kernel_forms() const { return alphas_; }
    const std::vector<Multivector>& hamiltonian_fields() const { return fields_; }
    int k() const { return k_; }
    const Form& sigma() const { return sigma_; }
    const ScalarField& f() const { return f_; }
    const ScalarField& g() const { return g_; }
    /// Φ, present when k ≥ 2.
    const std::optional<Form>& phi() const { return phi_; }

private:
    EvenProblem(AlmostSymplectic structure, std::vector<ScalarField> casimirs, std::vector<Form> alphas, int k,
                Form sigma, bool from_casimirs);

    AlmostSymplectic structure_;
    std::vector<ScalarField> casimirs_;
    std::vector<Form> alphas_;
    std::vector<Multivector> fields_;
    int k_;
    Form sigma_;
    ScalarField f_;
    ScalarField g_;
    bool from_casimirs_ = true;
    std::optional<Form> phi_;
};

struct CasimirSectionReport {
    /// Indices i with σ(X_{f_i}, ·) ≠ 0.
    std::vector<std::size_t> not_annihilated;
    std::size_t sigma_rank = 0;
    std::size_t expected_rank = 0;
    bool passed() const { return not_annihilated.empty() && sigma_rank == expected_rank; }
};
CasimirSectionReport verify_casimir_section(const EvenProblem& problem);

/// Φ = -(1/f)(σ + g/(k-1) ω₀)∧ω₀^{k-2}/(k-2)!∧α₁∧…∧α_r. Requires k ≥ 2.
Form build_phi(const EvenProblem& problem);

/// {h₁,h₂} from the top-form formula; k = 1 dispatches to jacobian_bracket with coefficient -g/f.
ScalarField bracket(const EvenProblem& problem, const ScalarField& h1, const ScalarField& h2);
/// Bivector whose coordinate brackets are given by `bracket`.
Multivector formula_bivector(const EvenProblem& problem);

/// top(dh₁∧dh₂∧η)/top(Ω) for an (m-2)-form η.
ScalarField top_form_bracket(const Form& volume, const Form& eta, const ScalarField& h1, const ScalarField& h2);
/// Bivector with Λ^{ij} = scale · top(dx_i∧dx_j∧η)/top(Ω).
Multivector top_form_bivector(const Form& volume, const Form& eta, const ScalarField& scale);

/// {h₁,h₂}Ω = c dh₁∧dh₂∧df₁∧…∧df_{m-2}.
ScalarField jacobian_bracket(const VolumeStructure& volume, const std::vector<ScalarField>& casimirs,
                             const ScalarField& coefficient, const ScalarField& h1, const ScalarField& h2);
Multivector jacobian_bivector(const VolumeStructure& volume, const std::vector<ScalarField>& casimirs,
                              const ScalarField& coefficient);

/// Prescribed-kernel bracket; the resulting bivector annihilates every α_i.
ScalarField bracket_with_kernel(const AlmostSymplectic& s, const std::vector<Form>& alphas, const Form& sigma,
                                const ScalarField& h1, const ScalarField& h2);

struct EvenVerification {
    bool complementary_checked = false;
    bool complementary = false;
    bool jacobi_checked = false;
    JacobiReport jacobi;
    /// Indices i with Λ^#(α_i) ≠ 0.
    std::vector<std::size_t> kernel_failures;
    std::size_t rank = 0;
    std::size_t rank_bound = 0;
    /// Ψ⁻¹(Φ) = Λ₀^#(σ); only for k ≥ 2.
    std::optional<bool> phi_route;
    /// The top-form bracket formula reproduces Λ₀^#(σ).
    bool formula_route = false;
    bool passed() const;
};

struct PoissonCandidate {
    Multivector bivector;
    Form sigma;
    std::optional<Form> tau;
    std::vector<ScalarField> casimirs;
    ScalarField f;
    ScalarField g;
    int k = 0;
    EvenVerification verification;
};

EvenVerification verify_even(const EvenProblem& problem, const Multivector& bivector,
                             CheckLevel level = CheckLevel::Full);
/// Λ = Λ₀^#(σ) with its verification bundle; throws MathError if σ fails
/// the complementary condition.
PoissonCandidate build_poisson(const EvenProblem& problem);
/// As build_poisson, never throwing on verification failures.
PoissonCandidate assemble_even(const EvenProblem& problem, CheckLevel level = CheckLevel::Full);

}  // namespace casimir
