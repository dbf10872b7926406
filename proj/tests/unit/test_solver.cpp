#include <doctest.h>

#include "generators.hpp"
#include "infodesign/causal.hpp"
#include "infodesign/design.hpp"
#include "infodesign/error.hpp"
#include "infodesign/solver.hpp"

using namespace infodesign;
using infodesign::testing::Rng;

namespace {

DecisionProblem example_problem() { return build_treatment_problem(motivating_example()); }

InformationStructure yt_structure() { return marginal_structure(motivating_example(), {{"Y", "T"}}); }

Vector extended_worst_case_prior() {
    const auto base = motivating_worst_case_prior();
    Vector nu;
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t t = 0; t < 2; ++t) nu.push_back(base[(y * 2 + x) * 2 + t] / 2);
    return nu;
}

// Action b is action a shifted down by one everywhere.
DecisionProblem dominated_problem() {
    Matrix u = Matrix::from_rows({{2, 0, 1, 3}, {1, -1, 0, 2}});
    return DecisionProblem({"s0", "s1", "s2", "s3"}, {"a", "b"}, u, Vector(4, Scalar(1, 4)), PriorPolytope::simplex(4));
}

}  // namespace

TEST_CASE("worst cases under (Y,T) disclosure") {
    auto p = example_problem();
    auto e = yt_structure();
    auto w0 = worst_case(p, e, MixedAction::pure(2, 0));
    auto w1 = worst_case(p, e, MixedAction::pure(2, 1));
    CHECK(w0.value == Scalar(1, 16));
    CHECK(w1.value == Scalar(1, 8));
    CHECK(identified_set(p, e).contains(w0.nu));
    CHECK(payoff(MixedAction::pure(2, 0), w0.nu, p) == w0.value);
}

TEST_CASE("full information pins the worst case to μ") {
    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
        auto p = testing::random_paired_problem(rng);
        auto alpha = testing::random_action(rng, p.num_actions());
        auto w = worst_case(p, InformationStructure::identity(p.num_states()), alpha);
        CHECK(w.value == payoff(alpha, p.mu(), p));
        CHECK(w.nu == p.mu());
    }
}

TEST_CASE("maxmin on the worked example") {
    auto p = example_problem();
    auto partial = maxmin(p, yt_structure());
    CHECK(partial.alpha_star == MixedAction::pure(2, 1));
    CHECK(partial.value == Scalar(1, 8));
    CHECK(verify_saddle(p, yt_structure(), partial));
    auto full = maxmin(p, InformationStructure::identity(16));
    CHECK(full.alpha_star == MixedAction::pure(2, 0));
    CHECK(full.value == Scalar(1, 4));
    CHECK(verify_saddle(p, InformationStructure::identity(16), full));
}

TEST_CASE("maxmin with constant utility") {
    Matrix u(3, 3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t w = 0; w < 3; ++w) u(a, w) = Scalar(-2, 3);
    DecisionProblem p({"s0", "s1", "s2"}, {"a", "b", "c"}, u, Vector(3, Scalar(1, 3)), PriorPolytope::simplex(3));
    auto e = InformationStructure::single_message(3);
    auto cert = maxmin(p, e);
    CHECK(cert.value == Scalar(-2, 3));
    CHECK(verify_saddle(p, e, cert));
    CHECK(best_responses(p, p.mu()) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("saddle certificates on random problems and structures") {
    Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        auto p = testing::random_paired_problem(rng);
        const std::size_t n = p.num_states();
        auto d = testing::random_zero_sum_vectors(rng, n, static_cast<std::size_t>(rng.integer(0, 3)));
        auto e = kernel_to_experiment(KernelSpec::span(n, d)).structure;
        auto cert = maxmin(p, e);
        CHECK(verify_saddle(p, e, cert));
        CHECK(minimax(p, identified_set(p, e)).value == cert.value);
        auto alpha = testing::random_action(rng, p.num_actions());
        CHECK(worst_case(p, e, alpha).value <= cert.value);
    }
}

TEST_CASE("best responses") {
    auto p = example_problem();
    CHECK(best_responses(p, p.mu()) == std::vector<std::size_t>{0});
    CHECK(best_responses(p, extended_worst_case_prior()) == std::vector<std::size_t>{1});
}

TEST_CASE("supporting priors") {
    auto p = example_problem();
    auto zero = supporting_prior(p, MixedAction::pure(2, 0));
    REQUIRE(zero);
    CHECK(zero->nu == p.mu());
    CHECK(zero->slack == 0);
    auto one = supporting_prior(p, MixedAction::pure(2, 1));
    REQUIRE(one);
    CHECK(supports(p, MixedAction::pure(2, 1), one->nu));
    CHECK(one->slack >= 0);
    CHECK(supports(p, MixedAction::pure(2, 1), extended_worst_case_prior()));
    CHECK(is_implementable(p, MixedAction::pure(2, 1)));
    CHECK(is_implementable(p, MixedAction::pure(2, 0)));

    auto dom = dominated_problem();
    CHECK_FALSE(supporting_prior(dom, MixedAction::pure(2, 1)));
    CHECK_FALSE(is_implementable(dom, MixedAction::pure(2, 1)));
    CHECK(is_implementable(dom, MixedAction::pure(2, 0)));
}

TEST_CASE("supporting priors re-check on random problems") {
    Rng rng(31);
    for (int i = 0; i < 80; ++i) {
        auto p = testing::random_paired_problem(rng);
        auto alpha = testing::random_action(rng, p.num_actions());
        auto prior = supporting_prior(p, alpha);
        if (!prior) continue;
        CHECK(p.priors().contains(prior->nu));
        CHECK(is_best_response(p, alpha, prior->nu));
        CHECK(prior->slack == payoff(alpha, p.mu(), p) - payoff(alpha, prior->nu, p));
        CHECK(prior->slack >= 0);
    }
}

TEST_CASE("researcher optimum") {
    auto p = example_problem();
    auto treat = researcher_optimum(p, Vector{0, 1});
    CHECK(treat.action == 1);
    CHECK(kernel_of(treat.structure).subspace.dim() == 1);
    CHECK(verify_saddle(p, treat.structure, treat.certificate));
    auto control = researcher_optimum(p, Vector{1, 0});
    CHECK(control.action == 0);
    CHECK(kernel_of(control.structure).fully_informative);
    auto tie = researcher_optimum(p, Vector{3, 3});
    CHECK(tie.action == 0);

    Matrix u = Matrix::from_rows({{0, 0}, {1, 1}});
    DecisionProblem dom({"s0", "s1"}, {"a", "b"}, u, Vector{Scalar(1, 2), Scalar(1, 2)}, PriorPolytope::simplex(2));
    CHECK(researcher_optimum(dom, Vector{5, 0}).action == 1);
    CHECK_THROWS_AS(researcher_optimum(dom, Vector{5}), DimensionMismatch);
}
