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
#include <utility>
#include <vector>

#include "casimir/casimir_even.hpp"

namespace casimir {

/// A 1-form ϑ₀ and 2-form Θ₀ on a (2n+1)-chart with ϑ₀∧Θ₀ⁿ ≠ 0, and the
/// transitive almost Jacobi pair (Λ₀, E₀) they determine:
///   i_{E₀}ϑ₀ = 1, i_{E₀}Θ₀ = 0, Λ₀^#(ϑ₀) = 0,
///   i_{Λ₀^#(ζ)}Θ₀ = -(ζ - ⟨ζ,E₀⟩ϑ₀).
/// Immutable after construction.
class AlmostCosymplectic {
public:
    /// Throws MathError naming the identity that cannot be solved.
    AlmostCosymplectic(Form theta0, Form Theta0);

    const ChartPtr& chart() const { return theta0_.chart(); }
    int n() const { return n_; }
    const Form& theta0() const { return theta0_; }
    const Form& Theta0() const { return Theta0_; }
    const Multivector& lambda0() const { return lambda0_; }
    const Multivector& reeb() const { return E0_; }
    /// Ω = ϑ₀∧Θ₀ⁿ/n!.
    const Form& omega() const { return volume_.omega(); }
    const VolumeStructure& volume() const { return volume_; }
    /// Θ₀ⁿ/n!, the semi-basic volume.
    const Form& Theta_top() const { return Theta_top_; }

    /// Λ₀^#, multiplicative over wedge.
    Multivector sharp(const Form& zeta) const;
    /// Names of the defining identities that fail; empty after construction.
    std::vector<std::string> failed_identities() const;

    /// i_{E₀}φ = 0.
    bool is_semibasic(const Form& phi) const;
    /// ∗φ = (-1)^{(p-1)p/2} i_{Λ₀^#(φ)} Θ₀ⁿ/n!. Throws MathError unless φ is semi-basic.
    Form star_sb(const Form& phi) const;
    /// dφ - ϑ₀∧i_{E₀}dφ.
    Form d_sb(const Form& phi) const;
    /// ∗ d_sb ∗. Throws MathError unless φ is semi-basic.
    Form delta_sb(const Form& phi) const;

private:
    Form theta0_;
    Form Theta0_;
    int n_ = 0;
    Multivector lambda0_;
    Multivector E0_;
    VolumeStructure volume_;
    Form Theta_top_;
    std::vector<Multivector> sharp_images_;
};

/// (Λ₀, E₀) for (ϑ₀, Θ₀).
std::pair<Multivector, Multivector> jacobi_pair(const Form& theta0, const Form& Theta0);

/// f = ⟨df₁∧…∧df_r, E₀∧Λ₀^{(r-1)/2}/((r-1)/2)!⟩ for an odd count r. Throws
/// MathError when f ≡ 0.
ScalarField casimir_factor_odd(const AlmostCosymplectic& s, const std::vector<ScalarField>& casimirs);

/// Odd-dimensional construction data: 2n+1-2k Casimirs and a semi-basic pair (σ, τ).
class OddProblem {
public:
    /// Throws MathError for a wrong Casimir count, k outside 1..n, or f ≡ 0.
    OddProblem(AlmostCosymplectic structure, std::vector<ScalarField> casimirs, int k, Form sigma, Form tau);

    const AlmostCosymplectic& structure() const { return structure_; }
    const ChartPtr& chart() const { return structure_.chart(); }
    const std::vector<ScalarField>& casimirs() const { return casimirs_; }
    /// X_{f_i} = Λ₀^#(df_i).
    const std::vector<Multivector>& hamiltonian_fields() const { return fields_; }
    int k() const { return k_; }
    const Form& sigma() const { return sigma_; }
    const Form& tau() const { return tau_; }
    const ScalarField& f() const { return f_; }
    const ScalarField& g() const { return g_; }
    /// -(1/f)(σ + g/(k-1) Θ₀)∧Θ₀^{k-2}/(k-2)!∧df₁∧…, present when k ≥ 2.
    const std::optional<Form>& phi() const { return phi_; }

private:
    AlmostCosymplectic structure_;
    std::vector<ScalarField> casimirs_;
    std::vector<Multivector> fields_;
    int k_;
    Form sigma_;
    Form tau_;
    ScalarField f_;
    ScalarField g_;
    std::optional<Form> phi_;
};

struct SigmaTauReport {
    bool sigma_semibasic = false;
    bool tau_semibasic = false;
    /// Indices i with τ(X_{f_i}) ≠ 0.
    std::vector<std::size_t> tau_not_annihilating;
    /// Indices i with σ(X_{f_i},·) + ⟨df_i,E₀⟩τ ≠ 0.
    std::vector<std::size_t> compatibility_failures;
    std::size_t sigma_rank = 0;
    std::size_t tau_rank = 0;
    /// (rank σ, rank τ) is one of (2k,0), (2k,1), (2k-2,1). Reported only.
    bool rank_pair_listed = false;
    /// 2σ∧δσ = δ(σ∧σ).
    bool first_equation = false;
    /// δ(σ∧τ) + δσ∧τ - σ∧δτ = (i_{Λ₀^#(dϑ₀)}σ)σ - ½ i_{Λ₀^#(dϑ₀)}(σ∧σ).
    bool second_equation = false;
    /// The complementary condition for σ' = σ + τ∧ds on the suspension.
    bool suspended_condition = false;
    /// Jacobi identity of Λ₀^#(σ) + Λ₀^#(τ)∧E₀ by the coordinate sum; full level only.
    std::optional<bool> jacobi;

    bool properties_hold() const {
        return sigma_semibasic && tau_semibasic && tau_not_annihilating.empty() && compatibility_failures.empty();
    }
    bool equations_hold() const { return first_equation && second_equation; }
    /// The semi-basic system and the suspended condition give the same verdict.
    bool equations_match_suspension() const { return equations_hold() == suspended_condition; }
    /// Properties (i)-(iii) and the suspended condition; the semi-basic
    /// system is reported alongside and does not decide.
    bool passed() const { return properties_hold() && suspended_condition; }
};

/// Semi-basic equations are evaluated only when σ and τ are semi-basic.
SigmaTauReport check_sigma_tau(const OddProblem& problem, CheckLevel level = CheckLevel::Full);

/// Λ = Λ₀^#(σ) + Λ₀^#(τ)∧E₀.
Multivector assembled_bivector(const OddProblem& problem);
/// The semi-basic pair (σ, τ) with Λ = Λ₀^#(σ) + Λ₀^#(τ)∧E₀.
std::pair<Form, Form> split_bivector(const AlmostCosymplectic& structure, const Multivector& bivector);

/// {h₁,h₂} from the top-form formula with Ω = ϑ₀∧Θ₀ⁿ/n!; k = 1 dispatches to
/// jacobian_bracket with coefficient -g/f.
ScalarField bracket_odd(const OddProblem& problem, const ScalarField& h1, const ScalarField& h2);
Multivector formula_bivector_odd(const OddProblem& problem);

/// Name of the suspension coordinate: "s", primed until it is free in the chart.
std::string suspension_coordinate(const Chart& chart);

/// Lifts a tensor to a chart that extends the original by trailing coordinates.
template <TensorKind K>
Tensor<K> lift(const Tensor<K>& t, const ChartPtr& extended);

/// The even problem on M×ℝ: ω₀' = Θ₀ + ds∧ϑ₀, Casimirs f₁,…,s, σ' = σ + τ∧ds.
EvenProblem suspend(const OddProblem& problem);

struct OddVerification {
    SigmaTauReport sigma_tau;
    /// Λ^#(df_i) ≠ 0.
    std::vector<std::size_t> kernel_failures;
    std::size_t rank = 0;
    std::size_t rank_bound = 0;
    /// Top-form formula reproduces Λ.
    bool formula_route = false;
    /// The suspended even bracket restricts to Λ; full level only.
    std::optional<bool> suspension_route;
    bool passed() const;
};

struct OddCandidate {
    Multivector bivector;
    Form sigma;
    Form tau;
    std::vector<ScalarField> casimirs;
    ScalarField f;
    ScalarField g;
    int k = 0;
    OddVerification verification;
};

OddVerification verify_odd(const OddProblem& problem, const Multivector& bivector,
                           CheckLevel level = CheckLevel::Full);

/// Λ with its verification bundle; never throws on verification failures.
OddCandidate assemble_odd(const OddProblem& problem, CheckLevel level = CheckLevel::Full);

}  // namespace casimir
