#pragma once

#include <string>
#include <vector>

#include "infodesign/design.hpp"
#include "infodesign/model.hpp"

namespace infodesign {

struct Covariate {
    std::string name;
    std::vector<std::string> values;

    friend bool operator==(const Covariate&, const Covariate&) = default;
};

/// Finite treatment-effects environment. States are (Y, X₁, …, X_ℓ, T) ordered
/// lexicographically with T varying fastest; covariate cells x are ordered the same way.
///
/// The constructor checks shapes only. The identification conditions (interior
/// assignment, μ consistent with the assignment, an assignment-irrelevant covariate) are
/// checked by build_treatment_problem so each failure gets its own error type.
class TreatmentModel {
public:
    /// `assignment` is |𝒳| × |𝒯| with entry (x, t) = P(T = t | X = x).
    TreatmentModel(Vector outcomes, std::vector<Covariate> covariates, std::vector<std::string> treatments,
                   Matrix assignment, Vector mu);

    const Vector& outcomes() const noexcept { return outcomes_; }
    const std::vector<Covariate>& covariates() const noexcept { return covariates_; }
    const std::vector<std::string>& treatments() const noexcept { return treatments_; }
    const Matrix& assignment() const noexcept { return assignment_; }
    const Vector& mu() const noexcept { return mu_; }

    std::size_t num_outcomes() const noexcept { return outcomes_.size(); }
    std::size_t num_cells() const noexcept { return cells_; }
    std::size_t num_treatments() const noexcept { return treatments_.size(); }
    std::size_t num_states() const noexcept { return outcomes_.size() * cells_ * treatments_.size(); }

    std::size_t state_index(std::size_t y, std::size_t cell, std::size_t t) const {
        return (y * cells_ + cell) * treatments_.size() + t;
    }
    /// Per-covariate value indices of a cell.
    std::vector<std::size_t> cell_values(std::size_t cell) const;
    std::vector<std::string> state_labels() const;
    /// μ(x) for every cell.
    Vector covariate_marginal() const;

private:
    Vector outcomes_;
    std::vector<Covariate> covariates_;
    std::vector<std::string> treatments_;
    Matrix assignment_;
    Vector mu_;
    std::size_t cells_ = 1;
};

struct TreatmentBuildOptions {
    /// Refuse models where every covariate shifts the assignment (no payoff-equivalent pairs).
    bool require_irrelevant_covariate = true;
};

/// Decision problem with A = 𝒯, u(a,(y,x,t)) = y·1{a=t}/P(t|x) and 𝒫 the priors whose
/// conditional treatment law matches the assignment, written homogeneously as
/// Σ_y ν(y,x,t) − P(t|x)·Σ_{y,τ} ν(y,x,τ) = 0.
/// Throws InteriorSupportViolation, AssignmentMismatch or NoIrrelevantCovariate.
DecisionProblem build_treatment_problem(const TreatmentModel& m, TreatmentBuildOptions options = {});

/// Appends an independent uniform binary covariate; μ is split evenly across its two
/// values and the assignment ignores it.
TreatmentModel add_irrelevant_signal(const TreatmentModel& m, const std::string& name = "S");

/// Index of the covariate the assignment does not depend on, if any.
std::optional<std::size_t> irrelevant_covariate(const TreatmentModel& m);

/// 𝔼_ν[Y_a] = ⟨a,ν⟩.
Scalar counterfactual_mean(const DecisionProblem& p, std::size_t treatment, std::span<const Scalar> nu);

struct MarginalPrior {
    Vector nu;        // ν_π(y,x,t) = π(y|t)·P(t|x)·μ(x)
    Vector payoffs;   // U_π(t) = Σ_y y·π(y|t)
};

/// `pi` is |𝒯| × |𝒴| with row t a distribution over outcomes. Verifies ν_π ∈ 𝒫 and the
/// payoff identity ⟨a,ν_π⟩ = U_π(a) exactly.
MarginalPrior prior_from_marginals(const TreatmentModel& m, const Matrix& pi);

/// Two-point outcome laws on {min 𝒴, max 𝒴} realizing target means U(t).
/// Throws InvalidArgument if some U(t) lies outside [min 𝒴, max 𝒴].
Matrix marginals_for_payoffs(const TreatmentModel& m, std::span<const Scalar> targets);

/// Implements any α: U*(t) = min_{τ∈supp α} 𝔼_μ[Y_τ] on the support of α and min 𝒴 off
/// it, realized by ν_π, then the implementing-structure pipeline from ν_π.
Implementation implement_treatment(const TreatmentModel& m, const MixedAction& alpha);

/// The variables disclosed by a marginal structure: names among "Y", covariate names, "T".
struct MarginalSpec {
    std::vector<std::string> variables;
};

/// Deterministic coarsening onto the variables in `spec`; messages are the joint values of
/// those variables in state order, labeled like "Y=0,T=1".
/// Throws EmptyOrFullVariableSet, InvalidArgument for unknown or repeated names.
InformationStructure marginal_structure(const TreatmentModel& m, const MarginalSpec& spec);

struct MarginalReport {
    std::size_t kernel_dim;
    Scalar bound;        // max over excluded variables v of (k_v − 1)/k_v · |Ω|
    bool not_maximal;    // kernel_dim > 1
};

MarginalReport check_marginal_not_maximal(const TreatmentModel& m, const MarginalSpec& spec);

/// The single-covariate example: binary Y, X, T with P(T=1|X=0) = 1/5, P(T=1|X=1) = 4/5.
/// Every covariate moves the assignment, so it only builds with the irrelevant-covariate
/// check disabled.
TreatmentModel motivating_example_base();
/// motivating_example_base() with an irrelevant binary signal "S" appended.
TreatmentModel motivating_example();
/// The worst-case joint distribution for the base example, in base state order.
Vector motivating_worst_case_prior();

}  // namespace infodesign
