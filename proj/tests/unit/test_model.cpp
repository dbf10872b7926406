#include <doctest.h>

#include "generators.hpp"
#include "infodesign/causal.hpp"
#include "infodesign/error.hpp"
#include "infodesign/model.hpp"

using namespace infodesign;
using infodesign::testing::Rng;

namespace {

DecisionProblem constant_problem(std::size_t n, const Scalar& c) {
    Matrix u(2, n);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t w = 0; w < n; ++w) u(a, w) = c;
    std::vector<std::string> states;
    for (std::size_t w = 0; w < n; ++w) states.push_back("s" + std::to_string(w));
    return DecisionProblem(states, {"a", "b"}, u, Vector(n, Scalar(1, n)), PriorPolytope::simplex(n));
}

}  // namespace

TEST_CASE("prior polytope validation") {
    CHECK_THROWS_AS(PriorPolytope(2, Matrix::from_rows({{1, 0}}), Vector{2}, Matrix(0, 2), {}), InvalidArgument);
    CHECK_THROWS_AS(PriorPolytope(2, Matrix::from_rows({{1, 0, 0}}), Vector{0}, Matrix(0, 2), {}), DimensionMismatch);
    PriorPolytope box(2, Matrix(0, 2), {}, Matrix::from_rows({{1, 0}}), Vector{Scalar(1, 2)});
    CHECK(box.contains(Vector{Scalar(1, 2), Scalar(1, 2)}));
    CHECK_FALSE(box.contains(Vector{Scalar(3, 4), Scalar(1, 4)}));
}

TEST_CASE("decision problem validation") {
    auto simplex = PriorPolytope::simplex(2);
    CHECK_THROWS_AS(DecisionProblem({"s0", "s1"}, {"a"}, Matrix(2, 2), Vector{Scalar(1, 2), Scalar(1, 2)}, simplex),
                    DimensionMismatch);
    CHECK_THROWS_AS(DecisionProblem({"s0", "s1"}, {"a"}, Matrix(1, 2), Vector{Scalar(1, 2), Scalar(1, 3)}, simplex),
                    InvalidArgument);
    PriorPolytope pinned(2, Matrix::from_rows({{1, 0}}), Vector{1}, Matrix(0, 2), {});
    CHECK_THROWS_AS(DecisionProblem({"s0", "s1"}, {"a"}, Matrix(1, 2), Vector{Scalar(1, 2), Scalar(1, 2)}, pinned),
                    InvalidArgument);
}

TEST_CASE("information structures must be column-stochastic") {
    CHECK_THROWS_AS(InformationStructure({"m0"}, Matrix::from_rows({{1, Scalar(1, 2)}})), InvalidArgument);
    CHECK_THROWS_AS(InformationStructure({"m0", "m1"}, Matrix::from_rows({{2, 0}, {-1, 1}})), InvalidArgument);
    InformationStructure ok({"m0", "m1"}, Matrix::from_rows({{Scalar(1, 3), 1}, {Scalar(2, 3), 0}}));
    CHECK(ok.num_states() == 2);
}

TEST_CASE("payoffs on the worked example") {
    const auto p = build_treatment_problem(motivating_example());
    CHECK(payoff(MixedAction::pure(2, 0), p.mu(), p) == Scalar(1, 4));
    CHECK(payoff(MixedAction::pure(2, 1), p.mu(), p) == Scalar(1, 8));
    CHECK(pure_payoffs(p.mu(), p) == Vector{Scalar(1, 4), Scalar(1, 8)});
    CHECK_THROWS_AS(payoff(MixedAction::pure(3, 0), p.mu(), p), DimensionMismatch);
}

TEST_CASE("constant utility gives a constant payoff") {
    auto p = constant_problem(3, Scalar(7, 3));
    Rng rng(3);
    for (int i = 0; i < 20; ++i)
        CHECK(payoff(testing::random_action(rng, 2), rng.distribution(3, 30), p) == Scalar(7, 3));
}

TEST_CASE("payoff is bilinear in the action") {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        auto p = testing::random_paired_problem(rng);
        auto a = testing::random_action(rng, p.num_actions());
        auto b = testing::random_action(rng, p.num_actions());
        Scalar l = Scalar(rng.integer(0, 5)) / 5;
        Vector mix(p.num_actions());
        for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = l * a[k] + (1 - l) * b[k];
        auto nu = rng.distribution(p.num_states(), 30);
        CHECK(payoff(MixedAction(mix), nu, p) == l * payoff(a, nu, p) + (1 - l) * payoff(b, nu, p));
    }
}

TEST_CASE("push_forward of identity, single message and random structures") {
    Vector nu{Scalar(1, 2), Scalar(1, 3), Scalar(1, 6)};
    CHECK(push_forward(InformationStructure::identity(3), nu) == nu);
    CHECK(push_forward(InformationStructure::single_message(3), nu) == Vector{1});
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 4;
        Matrix e(3, n);
        for (std::size_t c = 0; c < n; ++c) {
            auto col = rng.distribution(3, 30);
            for (std::size_t r = 0; r < 3; ++r) e(r, c) = col[r];
        }
        InformationStructure s(message_labels(3), e);
        CHECK(sum(push_forward(s, rng.distribution(n, 20))) == 1);
    }
}

TEST_CASE("kernel flags") {
    CHECK(kernel_of(InformationStructure::identity(4)).fully_informative);
    auto single = kernel_of(InformationStructure::single_message(4));
    CHECK(single.subspace.dim() == 3);
    CHECK_FALSE(single.almost_fully_informative);
}

TEST_CASE("identified sets: identity pins μ, single message keeps 𝒫") {
    Rng rng(10);
    for (int i = 0; i < 30; ++i) {
        auto p = testing::random_paired_problem(rng);
        auto full = identified_set(p, InformationStructure::identity(p.num_states()));
        CHECK(full.kernel().is_zero());
        CHECK(full.contains(p.mu()));
        for (std::size_t w = 0; w < p.num_states(); ++w) {
            auto lo = full.as_program(Sense::Minimize);
            lo.objective = unit_vector(p.num_states(), w);
            auto hi = lo;
            hi.sense = Sense::Maximize;
            CHECK(solve_lp(lo).value == p.mu()[w]);
            CHECK(solve_lp(hi).value == p.mu()[w]);
        }
        auto none = identified_set(p, InformationStructure::single_message(p.num_states()));
        auto nu = feasible_point(p.priors().as_program());
        REQUIRE(nu.optimal());
        CHECK(none.contains(nu.point));
    }
}

TEST_CASE("identified-set membership matches the kernel description") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        auto p = testing::random_paired_problem(rng);
        const std::size_t n = p.num_states();
        auto e = InformationStructure({"m0", "m1"}, [&] {
            Matrix m(2, n);
            for (std::size_t c = 0; c < n; ++c) {
                m(0, c) = Scalar(rng.integer(0, 2)) / 2;
                m(1, c) = 1 - m(0, c);
            }
            return m;
        }());
        auto set = identified_set(p, e);
        CHECK(set.contains(p.mu()));
        auto lp = p.priors().as_program();
        auto candidate = feasible_point(lp);
        if (rng.chance(50)) candidate.point = rng.distribution(n, 30);
        if (!p.priors().contains(candidate.point)) continue;
        Vector diff(n);
        for (std::size_t w = 0; w < n; ++w) diff[w] = candidate.point[w] - p.mu()[w];
        CHECK(set.contains(candidate.point) == set.kernel().contains(diff));
        CHECK(set.contains(candidate.point) == is_feasible(set.as_program(), candidate.point));
    }
}

TEST_CASE("payoff equivalence classes") {
    Matrix u = Matrix::from_rows({{1, 2, 1, 3}, {0, 5, 0, 5}});
    DecisionProblem p({"a", "b", "c", "d"}, {"x", "y"}, u, Vector(4, Scalar(1, 4)), PriorPolytope::simplex(4));
    auto classes = payoff_equivalence_classes(p);
    CHECK(classes.classes == std::vector<std::vector<std::size_t>>{{0, 2}, {1}, {3}});
    CHECK_FALSE(classes.every_class_paired);
    auto treated = payoff_equivalence_classes(build_treatment_problem(motivating_example()));
    CHECK(treated.every_class_paired);
}
