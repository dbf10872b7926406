#pragma once

#include <optional>
#include <vector>

#include "infodesign/model.hpp"

namespace infodesign {

/// A minimizing prior and the attained value.
struct WorstCase {
    Scalar value;
    Vector nu;
};

/// (α*, ν*, value): α* best-responds to ν*, and ν* minimizes ⟨α*,·⟩ over the identified set.
struct SaddleCertificate {
    MixedAction alpha_star;
    Vector nu_star;
    Scalar value;
};

/// ν ∈ 𝒫 under which α is a best response and ⟨α,ν⟩ ≤ ⟨α,μ⟩; slack = ⟨α,μ⟩ − ⟨α,ν⟩.
struct SupportingPrior {
    Vector nu;
    Scalar slack;
};

/// min over the identified set of ⟨α,·⟩, with a minimizer.
WorstCase worst_case(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha);
WorstCase worst_case(const DecisionProblem& p, const IdentifiedSet& set, const MixedAction& alpha);

/// min over the identified set of max over pure actions of ⟨a,·⟩, with a minimizer.
WorstCase minimax(const DecisionProblem& p, const IdentifiedSet& set);

/// The decision maker's problem max_α min_ν ⟨α,ν⟩. α* comes from one LP with the inner
/// minimization dualized; ν* from the min-max LP. Throws Error if the two values differ.
SaddleCertificate maxmin(const DecisionProblem& p, const InformationStructure& e);

/// Re-checks every certificate property exactly (one LP for the worst case of α*).
bool verify_saddle(const DecisionProblem& p, const InformationStructure& e, const SaddleCertificate& cert);

/// Exact argmax of ⟨a,ν⟩ over pure actions, in action order.
std::vector<std::size_t> best_responses(const DecisionProblem& p, std::span<const Scalar> nu);

/// α ∈ α*(ν): every action in α's support is a best response to ν.
bool is_best_response(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu);

/// Does ν support α? (ν ∈ 𝒫, α best-responds to ν, ⟨α,ν⟩ ≤ ⟨α,μ⟩)
bool supports(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu);

/// The feasibility system over ν whose solutions are exactly the priors supporting α.
LinearProgram supporting_prior_program(const DecisionProblem& p, const MixedAction& alpha);

/// μ itself when it supports α, otherwise a witness of the supporting-prior LP, or
/// nullopt when that LP is infeasible (its Farkas certificate is re-verified).
std::optional<SupportingPrior> supporting_prior(const DecisionProblem& p, const MixedAction& alpha);

bool is_implementable(const DecisionProblem& p, const MixedAction& alpha);

struct ResearcherOptimum {
    std::size_t action;
    SupportingPrior prior;
    InformationStructure structure;
    SaddleCertificate certificate;
};

/// Best pure implementable action for researcher payoffs v (ties go to the lower index),
/// with an almost fully informative structure implementing it.
/// Throws NoImplementableAction when no pure action is implementable.
ResearcherOptimum researcher_optimum(const DecisionProblem& p, std::span<const Scalar> v);

}  // namespace infodesign
