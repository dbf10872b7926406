#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infodesign/matrix.hpp"

namespace infodesign {

enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus s);

/// optimize objective·x  s.t.  eq·x = eq_rhs,  le·x ≤ le_rhs,  x_j ≥ lower_j.
/// A variable whose lower bound is nullopt is free.
struct LinearProgram {
    Sense sense = Sense::Minimize;
    Vector objective;
    Matrix eq;
    Vector eq_rhs;
    Matrix le;
    Vector le_rhs;
    std::vector<std::optional<Scalar>> lower;

    /// n variables, all x ≥ 0, zero objective, no constraints.
    static LinearProgram nonnegative(std::size_t n, Sense sense = Sense::Minimize);
    /// n free variables.
    static LinearProgram free(std::size_t n, Sense sense = Sense::Minimize);

    std::size_t num_vars() const noexcept { return lower.size(); }
    void add_equality(std::span<const Scalar> row, const Scalar& rhs);
    void add_inequality(std::span<const Scalar> row, const Scalar& rhs);
    /// Throws DimensionMismatch unless every block agrees on num_vars().
    void validate() const;
};

/// Result of a solve. Certificates follow one sign convention for every status,
/// with r ≡ c − eqᵀ·eq_duals − leᵀ·le_duals the reduced costs:
///  - Optimal (min): le_duals ≤ 0, r ≥ 0 on bounded variables, r = 0 on free ones,
///    and eq_rhs·eq_duals + le_rhs·le_duals + Σ lower_j·r_j == value.
///    For max the inequalities on le_duals and r flip.
///  - Infeasible: the same multipliers with c = 0 and a strictly positive dual value
///    (Farkas certificate).
///  - Unbounded: `point` is feasible and `ray` is a recession direction that strictly
///    improves the objective.
struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Vector point;
    Scalar value;
    Vector eq_duals;
    Vector le_duals;
    Vector ray;

    bool optimal() const noexcept { return status == LpStatus::Optimal; }
    /// eq_duals followed by le_duals.
    Vector multipliers() const;
};

/// Two-phase primal simplex with Bland's rule over exact rationals.
/// Deterministic: identical programs give identical outcomes.
LpOutcome solve_lp(const LinearProgram& p);

/// Any feasible point (status Optimal) or a Farkas certificate; the objective is ignored.
LpOutcome feasible_point(const LinearProgram& p);

/// True iff x satisfies every constraint of p exactly.
bool is_feasible(const LinearProgram& p, std::span<const Scalar> x);

/// Re-checks an outcome against the raw program, exactly. Independent of the solver.
bool verify_outcome(const LinearProgram& p, const LpOutcome& out);

}  // namespace infodesign
