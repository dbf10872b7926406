#pragma once

// Reference computations written without the library's algorithms, used to cross-check it.

#include "infodesign/causal.hpp"
#include "infodesign/lp.hpp"

namespace infodesign::testing {

/// Rank by plain Gaussian elimination on a copy.
std::size_t oracle_rank(std::vector<Vector> rows);

/// Checks the LP certificate convention from scratch: primal feasibility, dual sign
/// conditions, and equality of primal and dual objective values.
bool oracle_certificate_ok(const LinearProgram& lp, const LpOutcome& out);

/// 𝔼_μ[Y_t] by inverse propensity weighting: Σ_{y,x} y·μ(y,x,t)/P(t|x).
Scalar oracle_ipw_mean(const TreatmentModel& m, std::size_t t);

/// Σ_y y·μ(y|T=t) straight from the joint.
Scalar oracle_conditional_mean(const TreatmentModel& m, std::size_t t);

}  // namespace infodesign::testing
