#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infodesign/linalg.hpp"
#include "infodesign/lp.hpp"
#include "infodesign/matrix.hpp"

namespace infodesign {

/// A nonempty set of priors on |Ω| states in H-representation:
/// the simplex intersected with `equalities·ν = eq_rhs` and `inequalities·ν ≤ le_rhs`.
class PriorPolytope {
public:
    /// Checks nonemptiness exactly. When `witness` is given and lies in the set no LP is
    /// solved; otherwise a feasibility LP decides. Throws InvalidArgument if empty.
    PriorPolytope(std::size_t dimension, Matrix equalities, Vector eq_rhs, Matrix inequalities, Vector le_rhs,
                  const std::optional<Vector>& witness = std::nullopt);

    /// The whole simplex Δ(Ω).
    static PriorPolytope simplex(std::size_t dimension);

    std::size_t dimension() const noexcept { return dimension_; }
    const Matrix& equalities() const noexcept { return eq_; }
    const Vector& eq_rhs() const noexcept { return eq_rhs_; }
    const Matrix& inequalities() const noexcept { return le_; }
    const Vector& le_rhs() const noexcept { return le_rhs_; }

    bool contains(std::span<const Scalar> nu) const;
    /// Variables ν ≥ 0 with Σν = 1 and the polytope's own rows, zero objective.
    LinearProgram as_program(Sense sense = Sense::Minimize) const;

private:
    PriorPolytope(std::size_t dimension, Matrix equalities, Vector eq_rhs, Matrix inequalities, Vector le_rhs, bool);

    std::size_t dimension_;
    Matrix eq_;
    Vector eq_rhs_;
    Matrix le_;
    Vector le_rhs_;
};

/// Probability vector over actions.
class MixedAction {
public:
    explicit MixedAction(Vector weights);
    static MixedAction pure(std::size_t num_actions, std::size_t action);
    static MixedAction uniform(std::size_t num_actions);

    const Vector& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    const Scalar& operator[](std::size_t a) const { return weights_[a]; }
    std::vector<std::size_t> support() const;
    /// Index of the action when pure.
    std::optional<std::size_t> pure_action() const;

    friend bool operator==(const MixedAction&, const MixedAction&) = default;

private:
    Vector weights_;
};

/// States Ω, actions A, utility u[a][ω], true prior μ and prior set 𝒫.
class DecisionProblem {
public:
    /// Validates shapes, that μ is a probability vector and that μ ∈ 𝒫.
    DecisionProblem(std::vector<std::string> states, std::vector<std::string> actions, Matrix utility, Vector mu,
                    PriorPolytope priors);

    const std::vector<std::string>& states() const noexcept { return states_; }
    const std::vector<std::string>& actions() const noexcept { return actions_; }
    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    const Matrix& utility() const noexcept { return utility_; }
    const Vector& mu() const noexcept { return mu_; }
    const PriorPolytope& priors() const noexcept { return priors_; }

    std::optional<std::size_t> action_index(const std::string& label) const;
    std::optional<std::size_t> state_index(const std::string& label) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    Matrix utility_;
    Vector mu_;
    PriorPolytope priors_;
};

/// Messages Σ and a column-stochastic experiment E (|Σ| × |Ω|).
class InformationStructure {
public:
    /// Throws InvalidArgument unless every column is an exact probability vector.
    InformationStructure(std::vector<std::string> messages, Matrix experiment);

    /// Fully informative: one message per state.
    static InformationStructure identity(std::size_t num_states);
    /// One message sent with probability one in every state.
    static InformationStructure single_message(std::size_t num_states);

    const std::vector<std::string>& messages() const noexcept { return messages_; }
    const Matrix& experiment() const noexcept { return experiment_; }
    std::size_t num_states() const noexcept { return experiment_.cols(); }

private:
    std::vector<std::string> messages_;
    Matrix experiment_;
};

/// Labels "m0", "m1", ... used for constructed structures.
std::vector<std::string> message_labels(std::size_t count);

struct KernelReport {
    Subspace subspace;
    bool fully_informative;
    bool almost_fully_informative;
};

KernelReport kernel_of(const InformationStructure& e);

/// {ν ∈ 𝒫 : Eν = Eμ} = {ν ∈ 𝒫 : ν − μ ∈ ker E}.
class IdentifiedSet {
public:
    IdentifiedSet(const DecisionProblem& p, const InformationStructure& e);

    const PriorPolytope& base() const noexcept { return base_; }
    const Vector& mu() const noexcept { return mu_; }
    const Vector& pinned_pushforward() const noexcept { return pushforward_; }
    const InformationStructure& experiment() const noexcept { return experiment_; }
    const Subspace& kernel() const noexcept { return kernel_; }

    bool contains(std::span<const Scalar> nu) const;

    /// The set written over ν directly (ν ≥ 0, Σν = 1, 𝒫's rows, Eν = Eμ).
    LinearProgram as_program(Sense sense = Sense::Minimize) const;

    /// The set parametrized by kernel coordinates: ν = μ + Σ_i z_i·k_i with k_i the
    /// canonical kernel basis. Variables z are free; constraints are ν ≥ 0 and 𝒫's rows.
    LinearProgram kernel_program(Sense sense = Sense::Minimize) const;
    /// ν = μ + Kᵀz.
    Vector point(std::span<const Scalar> z) const;

private:
    PriorPolytope base_;
    Vector mu_;
    Vector pushforward_;
    InformationStructure experiment_;
    Subspace kernel_;
};

/// Σ_a Σ_ω α(a)·u(a,ω)·ν(ω).
Scalar payoff(const MixedAction& alpha, std::span<const Scalar> nu, const DecisionProblem& p);
/// The state-wise payoff of α: ω ↦ Σ_a α(a)·u(a,ω).
Vector payoff_vector(const MixedAction& alpha, const DecisionProblem& p);
/// Payoff of every pure action under ν.
Vector pure_payoffs(std::span<const Scalar> nu, const DecisionProblem& p);

Vector push_forward(const InformationStructure& e, std::span<const Scalar> nu);

IdentifiedSet identified_set(const DecisionProblem& p, const InformationStructure& e);

struct PayoffClasses {
    std::vector<std::vector<std::size_t>> classes;  // in order of first member
    bool every_class_paired;                         // all classes have at least two states
};

/// Groups states whose utility columns are identical.
PayoffClasses payoff_equivalence_classes(const DecisionProblem& p);

}  // namespace infodesign
