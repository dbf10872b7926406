#pragma once

// YAML problem and structure documents. Every number is written and read as text
// (integer, p/q or finite decimal) so values survive a round trip exactly.
// Parse and validation failures throw ParseError with "source:line:column: " prefixes.

#include <optional>
#include <string>

#include "infodesign/causal.hpp"
#include "infodesign/model.hpp"

namespace infodesign {

struct ProblemDocument {
    DecisionProblem problem;
    std::optional<TreatmentModel> treatment;  // set when the document has a treatment block
};

/// Generic form:
///   schema_version, states, actions, utility (one row per action), mu,
///   prior_constraints: {equalities: [{coefficients, rhs}], inequalities: [...]}
/// Treatment form:
///   schema_version, treatment: {outcomes, covariates: [{name, values}], treatments,
///   assignment (one row per covariate cell), mu, irrelevant_signal (optional name)}
ProblemDocument parse_problem(const std::string& text, const std::string& source = "<input>");
ProblemDocument load_problem(const std::string& path);

/// Exactly one of: messages + matrix; kernel: {basis}; marginal: {variables}.
/// A kernel block with an empty basis is the fully informative structure. Marginal blocks
/// need a treatment problem. An optional info.kernel_basis is checked against the kernel.
InformationStructure parse_structure(const std::string& text, const ProblemDocument& problem,
                                     const std::string& source = "<input>");
InformationStructure load_structure(const std::string& path, const ProblemDocument& problem);

/// messages + matrix, plus info.kernel_basis (canonical) for round-trip checks.
std::string emit_structure(const InformationStructure& e);

/// Generic form of any decision problem.
std::string emit_problem(const DecisionProblem& p);

}  // namespace infodesign
