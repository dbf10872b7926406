#include "infodesign/design.hpp"

#include <algorithm>

#include "infodesign/error.hpp"

namespace infodesign {

KernelSpec::KernelSpec(Subspace subspace) : subspace_(std::move(subspace)) {
    for (std::size_t i = 0; i < subspace_.dim(); ++i) {
        if (sgn(sum(subspace_.basis()[i])) != 0)
            throw ZeroSumViolation("kernel basis vector " + std::to_string(i) + " does not sum to zero");
    }
}

KernelSpec KernelSpec::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient_dim) throw DimensionMismatch("kernel vector length differs from state count");
        if (sgn(sum(vectors[i])) != 0)
            throw ZeroSumViolation("kernel vector " + std::to_string(i) + " does not sum to zero");
    }
    return KernelSpec(Subspace::span(ambient_dim, vectors));
}

ConstructedExperiment kernel_to_experiment(const KernelSpec& spec) {
    const auto& d = spec.subspace();
    const std::size_t n = d.ambient_dim();
    if (n == 0) throw InvalidArgument("kernel_to_experiment: no states");

    if (d.dim() == 0) {
        auto e = InformationStructure::identity(n);
        ConstructionTrace trace;
        trace.matrix = e.experiment();
        return {std::move(e), std::move(trace)};
    }
    if (d.dim() == n - 1) {
        auto e = InformationStructure::single_message(n);
        ConstructionTrace trace;
        trace.matrix = e.experiment();
        return {std::move(e), std::move(trace)};
    }

    ConstructionTrace trace;
    trace.complement_basis = orthogonal_complement(d).basis();
    const std::size_t l = trace.complement_basis.size();
    Scalar total = 0;
    for (const auto& w : trace.complement_basis) {
        auto [lo, hi] = std::minmax_element(w.begin(), w.end());
        trace.lower_shift.push_back(1 - *lo);
        trace.upper_shift.push_back(1 + *hi);
        total += trace.lower_shift.back() + trace.upper_shift.back();
    }
    trace.normalizer = 1 / total;

    Matrix m(2 * l, n);
    for (std::size_t i = 0; i < l; ++i) {
        const auto& w = trace.complement_basis[i];
        for (std::size_t c = 0; c < n; ++c) {
            m(i, c) = trace.normalizer * (trace.lower_shift[i] + w[c]);
            m(l + i, c) = trace.normalizer * (trace.upper_shift[i] - w[c]);
        }
    }
    trace.matrix = m;
    return {InformationStructure(message_labels(2 * l), std::move(m)), std::move(trace)};
}

Vector boundary_adjust(const DecisionProblem& p, std::span<const Scalar> nu) {
    if (!p.priors().contains(nu)) throw InvalidArgument("boundary_adjust: prior is not in the prior set");
    const auto& mu = p.mu();
    const std::size_t n = p.num_states();

    for (std::size_t w = 0; w < n; ++w)
        if (sgn(mu[w]) > 0 && sgn(nu[w]) == 0) return Vector(nu.begin(), nu.end());

    const auto classes = payoff_equivalence_classes(p);
    std::vector<std::size_t> class_of(n);
    for (std::size_t c = 0; c < classes.classes.size(); ++c)
        for (auto w : classes.classes[c]) class_of[w] = c;

    for (std::size_t w = 0; w < n; ++w) {
        if (sgn(mu[w]) <= 0) continue;
        for (auto partner : classes.classes[class_of[w]]) {
            if (partner == w) continue;
            Vector moved(nu.begin(), nu.end());
            moved[partner] += moved[w];
            moved[w] = 0;
            if (p.priors().contains(moved)) return moved;
        }
    }

    // Single moves can break constraints that couple several states (conditional laws).
    // Search for any reallocation inside payoff classes that empties a positive-μ state.
    auto lp = p.priors().as_program();
    for (const auto& cls : classes.classes) {
        Vector row(n, Scalar(0));
        Scalar mass = 0;
        for (auto s : cls) {
            row[s] = 1;
            mass += nu[s];
        }
        lp.add_equality(row, mass);
    }
    for (std::size_t w = 0; w < n; ++w) {
        if (sgn(mu[w]) <= 0 || classes.classes[class_of[w]].size() < 2) continue;
        auto attempt = lp;
        attempt.add_equality(unit_vector(n, w), Scalar(0));
        auto out = feasible_point(attempt);
        if (out.optimal()) return out.point;
    }
    throw AssumptionViolation("no payoff-equivalent reallocation keeps the prior inside the prior set");
}

std::optional<Scalar> max_extension(const DecisionProblem& p, std::span<const Scalar> nu) {
    const auto& mu = p.mu();
    const std::size_t n = p.num_states();
    if (nu.size() != n) throw DimensionMismatch("prior length differs from state count");
    Vector d(n);
    for (std::size_t w = 0; w < n; ++w) d[w] = nu[w] - mu[w];

    // μ + λd ∈ 𝒫 as constraints on the single free variable λ.
    auto lp = LinearProgram::free(1, Sense::Maximize);
    lp.objective[0] = 1;
    lp.add_equality(Vector{sum(d)}, 1 - sum(mu));
    for (std::size_t w = 0; w < n; ++w) lp.add_inequality(Vector{-d[w]}, mu[w]);
    const auto& pr = p.priors();
    for (std::size_t r = 0; r < pr.equalities().rows(); ++r)
        lp.add_equality(Vector{dot(pr.equalities().row(r), d)}, pr.eq_rhs()[r] - dot(pr.equalities().row(r), mu));
    for (std::size_t r = 0; r < pr.inequalities().rows(); ++r)
        lp.add_inequality(Vector{dot(pr.inequalities().row(r), d)}, pr.le_rhs()[r] - dot(pr.inequalities().row(r), mu));

    auto out = solve_lp(lp);
    if (out.status == LpStatus::Unbounded) return std::nullopt;
    if (!out.optimal()) throw Error("extension LP infeasible although λ = 0 is feasible");
    return out.value;
}

namespace {

Implementation checked(const DecisionProblem& p, Implementation impl) {
    if (!verify_saddle(p, impl.structure, impl.certificate))
        throw Error("constructed structure failed saddle verification");
    return impl;
}

}  // namespace

Implementation implement_with_prior(const DecisionProblem& p, const MixedAction& alpha, std::span<const Scalar> nu) {
    if (is_best_response(p, alpha, p.mu())) {
        Scalar v = payoff(alpha, p.mu(), p);
        return checked(p, {InformationStructure::identity(p.num_states()), SaddleCertificate{alpha, p.mu(), v}});
    }
    if (!supports(p, alpha, nu)) throw InvalidArgument("implement_with_prior: prior does not support the action");

    Vector adjusted = boundary_adjust(p, nu);
    Vector direction(p.num_states());
    for (std::size_t w = 0; w < direction.size(); ++w) direction[w] = adjusted[w] - p.mu()[w];
    auto built = kernel_to_experiment(KernelSpec::span(p.num_states(), {direction}));
    Scalar v = payoff(alpha, adjusted, p);
    return checked(p, {std::move(built.structure), SaddleCertificate{alpha, std::move(adjusted), std::move(v)}});
}

Implementation implementing_structure(const DecisionProblem& p, const MixedAction& alpha) {
    auto prior = supporting_prior(p, alpha);
    if (!prior) {
        auto out = feasible_point(supporting_prior_program(p, alpha));
        throw NotImplementable("action has no supporting prior", out.multipliers());
    }
    return implement_with_prior(p, alpha, prior->nu);
}

bool implements(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha) {
    return worst_case(p, e, alpha).value == maxmin(p, e).value;
}

const char* to_string(Informativeness o) {
    switch (o) {
    case Informativeness::More: return "more";
    case Informativeness::Less: return "less";
    case Informativeness::Equal: return "equal";
    case Informativeness::Incomparable: return "incomparable";
    }
    return "unknown";
}

Informativeness robustly_more_informative(const InformationStructure& e1, const InformationStructure& e2) {
    if (e1.num_states() != e2.num_states()) throw DimensionMismatch("structures act on different state counts");
    const auto k1 = kernel_of(e1).subspace;
    const auto k2 = kernel_of(e2).subspace;
    const bool k1_in_k2 = subspace_contains(k2, k1);
    const bool k2_in_k1 = subspace_contains(k1, k2);
    if (k1_in_k2 && k2_in_k1) return Informativeness::Equal;
    if (k1_in_k2) return Informativeness::More;
    if (k2_in_k1) return Informativeness::Less;
    return Informativeness::Incomparable;
}

namespace {

// Closed interval of λ, possibly unbounded on either side, possibly empty.
struct LambdaInterval {
    std::optional<Scalar> lo;
    std::optional<Scalar> hi;
    bool empty = false;

    // a + bλ ≥ 0
    void at_least_zero(const Scalar& a, const Scalar& b) {
        if (sgn(b) == 0) {
            if (sgn(a) < 0) empty = true;
            return;
        }
        Scalar root = -a / b;
        if (sgn(b) > 0) {
            if (!lo || root > *lo) lo = root;
        } else {
            if (!hi || root < *hi) hi = root;
        }
        if (lo && hi && *lo > *hi) empty = true;
    }
    // a + bλ = 0
    void equal_zero(const Scalar& a, const Scalar& b) {
        at_least_zero(a, b);
        at_least_zero(-a, -b);
    }
    bool has_nonzero_point() const {
        if (empty) return false;
        if (lo && hi && sgn(*lo) == 0 && sgn(*hi) == 0) return false;
        return true;
    }
};

}  // namespace

bool is_maximally_informative(const DecisionProblem& p, const InformationStructure& e, const MixedAction& alpha) {
    if (!implements(p, e, alpha)) throw NotImplementing("structure does not implement the action");
    const auto kernel = kernel_of(e).subspace;
    if (is_best_response(p, alpha, p.mu())) return kernel.dim() == 0;
    if (kernel.dim() != 1) return false;

    const auto& mu = p.mu();
    const auto& d = kernel.basis().front();
    const auto& pr = p.priors();
    LambdaInterval iv;
    for (std::size_t w = 0; w < mu.size(); ++w) iv.at_least_zero(mu[w], d[w]);
    for (std::size_t r = 0; r < pr.equalities().rows(); ++r) {
        auto row = pr.equalities().row(r);
        iv.equal_zero(dot(row, mu) - pr.eq_rhs()[r], dot(row, d));
    }
    for (std::size_t r = 0; r < pr.inequalities().rows(); ++r) {
        auto row = pr.inequalities().row(r);
        iv.at_least_zero(pr.le_rhs()[r] - dot(row, mu), -dot(row, d));
    }
    const Vector c = payoff_vector(alpha, p);
    for (std::size_t b = 0; b < p.num_actions(); ++b) {
        auto ub = p.utility().row(b);
        Vector diff(c.size());
        for (std::size_t w = 0; w < c.size(); ++w) diff[w] = c[w] - ub[w];
        iv.at_least_zero(dot(diff, mu), dot(diff, d));
    }
    iv.at_least_zero(Scalar(0), -dot(c, d));
    return iv.has_nonzero_point();
}

}  // namespace infodesign
