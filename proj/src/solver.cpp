#include "infodesign/solver.hpp"

#include <algorithm>
#include <numeric>

#include "infodesign/design.hpp"
#include "infodesign/error.hpp"

namespace infodesign {

namespace {

// Coordinates of a state-wise vector c along the kernel basis: (K c)_i = ⟨k_i, c⟩.
Vector along_kernel(const Subspace& kernel, std::span<const Scalar> c) {
    Vector out(kernel.dim());
    for (std::size_t i = 0; i < kernel.dim(); ++i) out[i] = dot(kernel.basis()[i], c);
    return out;
}

void check_problem_structure(const DecisionProblem& p, const InformationStructure& e) {
    if (e.num_states() != p.num_states()) throw DimensionMismatch("experiment columns differ from state count");
}

}  // namespace

WorstCase worst_case(const DecisionProblem& p, const IdentifiedSet& set, const MixedAction& alpha) {
    const Vector c = payoff_vector(alpha, p);
    auto lp = set.kernel_program(Sense::Minimize);
    lp.objective = along_kernel(set.kernel(), c);
    auto out = solve_lp(lp);
    if (!out.optimal()) throw Error("worst-case LP over a compact identified set was " + to_string(out.status));
    Vector nu = set.point(out.point);
    Scalar value = dot(c, nu);
    return {std::move(value), std::move(nu)};
}

WorstCase worst_case(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha) {
    check_problem_structure(p, e);
    return worst_case(p, identified_set(p, e), alpha);
}

WorstCase minimax(const DecisionProblem& p, const IdentifiedSet& set) {
    // Variables: kernel coordinates z, then the epigraph variable t (free).
    auto inner = set.kernel_program();
    const std::size_t k = inner.num_vars();
    auto lp = LinearProgram::free(k + 1);
    lp.objective[k] = 1;
    auto widen = [&](std::span<const Scalar> row) {
        Vector r(row.begin(), row.end());
        r.push_back(Scalar(0));
        return r;
    };
    for (std::size_t i = 0; i < inner.eq.rows(); ++i) lp.add_equality(widen(inner.eq.row(i)), inner.eq_rhs[i]);
    for (std::size_t i = 0; i < inner.le.rows(); ++i) lp.add_inequality(widen(inner.le.row(i)), inner.le_rhs[i]);
    // ⟨u_a, μ + Kᵀz⟩ ≤ t
    for (std::size_t a = 0; a < p.num_actions(); ++a) {
        auto ua = p.utility().row(a);
        Vector r = along_kernel(set.kernel(), ua);
        r.push_back(Scalar(-1));
        lp.add_inequality(r, -dot(ua, set.mu()));
    }
    auto out = solve_lp(lp);
    if (!out.optimal()) throw Error("min-max LP over a compact identified set was " + to_string(out.status));
    Vector z(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(k));
    return {out.value, set.point(z)};
}

SaddleCertificate maxmin(const DecisionProblem& p, const InformationStructure& e) {
    check_problem_structure(p, e);
    const IdentifiedSet set = identified_set(p, e);
    const auto inner = set.kernel_program();
    const std::size_t na = p.num_actions();
    const std::size_t k = inner.num_vars();
    const std::size_t ns = inner.le.rows();
    const std::size_t ny = inner.eq.rows();

    // Inner problem for fixed α:  min ⟨c_α,μ⟩ + (K c_α)·z  s.t. G z ≤ h, F z = f.
    // Its dual:  max ⟨c_α,μ⟩ − h·s + f·y  s.t.  −Gᵀs + Fᵀy = K c_α,  s ≥ 0.
    // Variables: α (≥ 0), s (≥ 0), y (free).
    auto lp = LinearProgram::nonnegative(na + ns + ny, Sense::Maximize);
    for (std::size_t j = 0; j < ny; ++j) lp.lower[na + ns + j] = std::nullopt;
    for (std::size_t a = 0; a < na; ++a) lp.objective[a] = dot(p.utility().row(a), p.mu());
    for (std::size_t j = 0; j < ns; ++j) lp.objective[na + j] = -inner.le_rhs[j];
    for (std::size_t j = 0; j < ny; ++j) lp.objective[na + ns + j] = inner.eq_rhs[j];

    for (std::size_t i = 0; i < k; ++i) {
        Vector row(lp.num_vars(), Scalar(0));
        for (std::size_t a = 0; a < na; ++a) row[a] = -dot(set.kernel().basis()[i], p.utility().row(a));
        for (std::size_t j = 0; j < ns; ++j) row[na + j] = -inner.le(j, i);
        for (std::size_t j = 0; j < ny; ++j) row[na + ns + j] = inner.eq(j, i);
        lp.add_equality(row, Scalar(0));
    }
    Vector simplex_row(lp.num_vars(), Scalar(0));
    for (std::size_t a = 0; a < na; ++a) simplex_row[a] = 1;
    lp.add_equality(simplex_row, Scalar(1));

    auto out = solve_lp(lp);
    if (!out.optimal()) throw Error("maxmin LP was " + to_string(out.status));
    MixedAction alpha(Vector(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(na)));

    WorstCase mm = minimax(p, set);
    if (mm.value != out.value) throw Error("maxmin and minmax values differ: " + to_string(out.value) + " vs " + to_string(mm.value));
    return SaddleCertificate{std::move(alpha), std::move(mm.nu), out.value};
}

bool verify_saddle(const DecisionProblem& p, const InformationStructure& e, const SaddleCertificate& cert) {
    if (cert.alpha_star.size() != p.num_actions() || cert.nu_star.size() != p.num_states()) return false;
    const IdentifiedSet set = identified_set(p, e);
    if (!set.contains(cert.nu_star)) return false;
    if (payoff(cert.alpha_star, cert.nu_star, p) != cert.value) return false;
    for (const auto& v : pure_payoffs(cert.nu_star, p))
        if (v > cert.value) return false;
    return worst_case(p, set, cert.alpha_star).value == cert.value;
}

std::vector<std::size_t> best_responses(const DecisionProblem& p, std::span<const Scalar> nu) {
    const Vector values = pure_payoffs(nu, p);
    const Scalar& best = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < values.size(); ++a)
        if (values[a] == best) out.push_back(a);
    return out;
}

bool is_best_response(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu) {
    const Vector values = pure_payoffs(nu, p);
    const Scalar& best = *std::max_element(values.begin(), values.end());
    for (auto a : alpha.support())
        if (values[a] != best) return false;
    return true;
}

bool supports(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu) {
    if (!p.priors().contains(nu)) return false;
    return is_best_response(p, alpha, nu) && payoff(alpha, nu, p) <= payoff(alpha, p.mu(), p);
}

LinearProgram supporting_prior_program(const DecisionProblem& p, const MixedAction& alpha) {
    const Vector c = payoff_vector(alpha, p);
    auto lp = p.priors().as_program();
    for (std::size_t b = 0; b < p.num_actions(); ++b) {
        // ⟨b,ν⟩ − ⟨α,ν⟩ ≤ 0
        Vector row(p.num_states());
        auto ub = p.utility().row(b);
        for (std::size_t w = 0; w < row.size(); ++w) row[w] = ub[w] - c[w];
        lp.add_inequality(row, Scalar(0));
    }
    lp.add_inequality(c, dot(c, p.mu()));
    return lp;
}

std::optional<SupportingPrior> supporting_prior(const DecisionProblem& p, const MixedAction& alpha) {
    if (alpha.size() != p.num_actions()) throw DimensionMismatch("mixed action length differs from action count");
    if (is_best_response(p, alpha, p.mu())) return SupportingPrior{p.mu(), Scalar(0)};

    const auto lp = supporting_prior_program(p, alpha);
    auto out = feasible_point(lp);
    if (!verify_outcome(lp, out)) throw Error("supporting-prior LP certificate failed verification");
    if (!out.optimal()) return std::nullopt;
    Scalar slack = payoff(alpha, p.mu(), p) - payoff(alpha, out.point, p);
    return SupportingPrior{std::move(out.point), std::move(slack)};
}

bool is_implementable(const DecisionProblem& p, const MixedAction& alpha) {
    return supporting_prior(p, alpha).has_value();
}

ResearcherOptimum researcher_optimum(const DecisionProblem& p, std::span<const Scalar> v) {
    if (v.size() != p.num_actions()) throw DimensionMismatch("researcher payoffs need one entry per action");
    std::vector<std::size_t> order(p.num_actions());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    for (auto a : order) {
        const auto alpha = MixedAction::pure(p.num_actions(), a);
        auto prior = supporting_prior(p, alpha);
        if (!prior) continue;
        auto impl = implement_with_prior(p, alpha, prior->nu);
        return ResearcherOptimum{a, std::move(*prior), std::move(impl.structure), std::move(impl.certificate)};
    }
    throw NoImplementableAction("no pure action is implementable");
}

}  // namespace infodesign
