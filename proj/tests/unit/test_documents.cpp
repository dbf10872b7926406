#include <doctest.h>

#include <string>

#include "generators.hpp"
#include "infodesign/causal.hpp"
#include "infodesign/design.hpp"
#include "infodesign/documents.hpp"
#include "infodesign/error.hpp"
#include "infodesign/solver.hpp"

using namespace infodesign;
using infodesign::testing::Rng;

namespace {

const std::string kData = DATA_DIR;

const char* kSmall = R"(schema_version: "1"
states: [w0, w1, w2]
actions: [a, b]
utility:
  - [1, 0, 1/2]
  - [0, 1, 0.25]
mu: [1/3, 1/3, 1/3]
prior_constraints:
  inequalities:
    - coefficients: [1, 0, 0]
      rhs: 3/4
)";

std::string error_of(const std::string& text, const ProblemDocument* problem = nullptr) {
    try {
        if (problem)
            parse_structure(text, *problem, "doc");
        else
            parse_problem(text, "doc");
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("generic problem parses exactly") {
    const auto doc = parse_problem(kSmall);
    const auto& p = doc.problem;
    CHECK_FALSE(doc.treatment.has_value());
    CHECK(p.num_states() == 3);
    CHECK(p.actions()[1] == "b");
    CHECK(p.utility()(0, 2) == Scalar(1) / 2);
    CHECK(p.utility()(1, 2) == Scalar(1) / 4);
    CHECK(p.mu()[0] == Scalar(1) / 3);
    CHECK(p.priors().inequalities().rows() == 1);
    CHECK(p.priors().le_rhs()[0] == Scalar(3) / 4);
}

TEST_CASE("parse errors carry line and column") {
    std::string short_row = kSmall;
    short_row.replace(short_row.find("[0, 1, 0.25]"), 12, "[0, 1]");
    CHECK(error_of(short_row) == "doc:6:5: expected 3 entries, found 2");

    std::string bad_number = kSmall;
    bad_number.replace(bad_number.find("0.25"), 4, "1e-2");
    CHECK(error_of(bad_number).rfind("doc:6:12: not an exact number", 0) == 0);

    std::string typo = kSmall;
    typo.replace(typo.find("mu:"), 3, "mew:");
    CHECK(error_of(typo).rfind("doc:7:1: unknown key 'mew'", 0) == 0);

    CHECK(error_of("schema_version: \"2\"\nstates: [a]\n").rfind("doc:1:17: unsupported schema_version", 0) == 0);
    CHECK(error_of("schema_version: \"1\"\nstates: [a, a]\n").rfind("doc:2:13: duplicate label", 0) == 0);
    CHECK(error_of("states: [a\n").rfind("doc:2:", 0) == 0);
}

TEST_CASE("validation failures are anchored parse errors") {
    std::string not_prob = kSmall;
    not_prob.replace(not_prob.find("mu: [1/3, 1/3, 1/3]"), 19, "mu: [1/2, 1/3, 1/3]");
    CHECK(error_of(not_prob).rfind("doc:7:5: ", 0) == 0);

    std::string outside = kSmall;
    outside.replace(outside.find("rhs: 3/4"), 8, "rhs: 1/4");
    CHECK(error_of(outside).rfind("doc:", 0) == 0);
}

TEST_CASE("treatment document builds the extended example") {
    const auto doc = load_problem(kData + "/treatment_example.yaml");
    REQUIRE(doc.treatment.has_value());
    const auto expected = motivating_example();
    CHECK(doc.treatment->covariates() == expected.covariates());
    CHECK(doc.treatment->assignment() == expected.assignment());
    CHECK(doc.treatment->mu() == expected.mu());
    CHECK(doc.problem.states() == expected.state_labels());
    CHECK(doc.problem.num_states() == 16);
    CHECK(counterfactual_mean(doc.problem, 0, doc.problem.mu()) == Scalar(1) / 4);
    CHECK(counterfactual_mean(doc.problem, 1, doc.problem.mu()) == Scalar(1) / 8);
}

TEST_CASE("treatment document errors") {
    const std::string base = R"(schema_version: "1"
treatment:
  outcomes: [0, 1]
  covariates:
    - name: X
      values: ["0", "1"]
  treatments: ["0", "1"]
  assignment:
    - [4/5, 1/5]
    - [1/5, 4/5]
  mu: [0.40, 0.10, 0.05, 0.30, 0, 0, 0.05, 0.10]
)";
    CHECK(error_of(base).find("covariate") != std::string::npos);
    CHECK(error_of(base).rfind("doc:3:3: ", 0) == 0);

    std::string corner = base + "  irrelevant_signal: S\n";
    corner.replace(corner.find("[4/5, 1/5]"), 10, "[1, 0]");
    CHECK(error_of(corner).rfind("doc:", 0) == 0);

    CHECK(error_of(base + "states: [a]\n").find("cannot also define 'states'") != std::string::npos);
}

TEST_CASE("bundled structures") {
    const auto doc = load_problem(kData + "/treatment_example.yaml");
    const auto& p = doc.problem;

    const auto yt = load_structure(kData + "/marginal_yt.yaml", doc);
    CHECK(yt.messages().size() == 4);
    const auto under_yt = maxmin(p, yt);
    CHECK(under_yt.value == Scalar(1) / 8);
    CHECK(under_yt.alpha_star == MixedAction::pure(2, 1));

    const auto full = load_structure(kData + "/identity.yaml", doc);
    CHECK(kernel_of(full).fully_informative);
    const auto under_full = maxmin(p, full);
    CHECK(under_full.value == Scalar(1) / 4);
    CHECK(under_full.alpha_star == MixedAction::pure(2, 0));

    const auto single = load_structure(kData + "/single_message.yaml", doc);
    CHECK(robustly_more_informative(full, single) == Informativeness::More);

    CHECK_THROWS_AS(load_structure(kData + "/marginal_yt.yaml", load_problem(kData + "/dominated.yaml")), ParseError);
}

TEST_CASE("structure needs exactly one representation") {
    const auto doc = load_problem(kData + "/treatment_example.yaml");
    CHECK(error_of("schema_version: \"1\"\n", &doc).find("exactly one of") != std::string::npos);
    CHECK(error_of("schema_version: \"1\"\nkernel: {basis: []}\nmarginal: {variables: [Y]}\n", &doc)
              .find("exactly one of") != std::string::npos);
    CHECK(error_of("schema_version: \"1\"\nmessages: [m]\nkernel: {basis: []}\n", &doc).find("exactly one of") !=
          std::string::npos);
    CHECK(error_of("schema_version: \"1\"\nmarginal: {variables: [Y, Q]}\n", &doc).rfind("doc:2:11: ", 0) == 0);
}

TEST_CASE("kernel block compiles to a structure with that kernel") {
    const auto doc = parse_problem(kSmall);
    const auto e = parse_structure("schema_version: \"1\"\nkernel:\n  basis:\n    - [1, -1, 0]\n", doc);
    CHECK(kernel_of(e).subspace == Subspace::span(3, {Vector{Scalar(1), Scalar(-1), Scalar(0)}}));
    CHECK(error_of("schema_version: \"1\"\nkernel:\n  basis:\n    - [1, 1, 0]\n", &doc).rfind("doc:3:3: ", 0) == 0);
}

TEST_CASE("declared kernel basis is checked") {
    const auto doc = parse_problem(kSmall);
    const std::string matrix = "schema_version: \"1\"\nmessages: [m0, m1]\nmatrix:\n  - [1, 1, 0]\n  - [0, 0, 1]\n";
    CHECK_NOTHROW(parse_structure(matrix + "info:\n  kernel_basis: [[2, -2, 0]]\n", doc));
    CHECK(error_of(matrix + "info:\n  kernel_basis: [[1, 0, -1]]\n", &doc) ==
          "doc:7:17: kernel_basis does not match the kernel of the matrix");
}

TEST_CASE("emitted structures round-trip with their kernel") {
    Rng rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<std::size_t>(rng.integer(2, 7));
        const auto count = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
        const auto spec = KernelSpec::span(n, testing::random_zero_sum_vectors(rng, n, count));
        const auto e = kernel_to_experiment(spec).structure;
        std::vector<std::string> states;
        for (std::size_t i = 0; i < n; ++i) states.push_back("w" + std::to_string(i));
        Matrix u(1, n);
        const ProblemDocument doc{DecisionProblem(states, {"a"}, u, Vector(n, Scalar(1) / static_cast<long>(n)),
                                                  PriorPolytope::simplex(n)),
                                  std::nullopt};
        const auto text = emit_structure(e);
        const auto back = parse_structure(text, doc);
        CHECK(back.messages() == e.messages());
        CHECK(back.experiment() == e.experiment());
        CHECK(kernel_of(back).subspace == spec.subspace());
        CHECK(emit_structure(back) == text);
    }
}

TEST_CASE("emitted problems round-trip") {
    Rng rng(72);
    for (int trial = 0; trial < 30; ++trial) {
        const auto p = testing::random_paired_problem(rng);
        const auto back = parse_problem(emit_problem(p)).problem;
        CHECK(back.states() == p.states());
        CHECK(back.actions() == p.actions());
        CHECK(back.utility() == p.utility());
        CHECK(back.mu() == p.mu());
        CHECK(back.priors().equalities() == p.priors().equalities());
        CHECK(back.priors().eq_rhs() == p.priors().eq_rhs());
        CHECK(back.priors().inequalities() == p.priors().inequalities());
        CHECK(back.priors().le_rhs() == p.priors().le_rhs());
    }
    const auto treatment = load_problem(kData + "/treatment_example.yaml").problem;
    const auto back = parse_problem(emit_problem(treatment)).problem;
    CHECK(back.utility() == treatment.utility());
    CHECK(back.priors().equalities() == treatment.priors().equalities());
}
