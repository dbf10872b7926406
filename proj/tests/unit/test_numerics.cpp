#include <doctest.h>

#include "generators.hpp"
#include "infodesign/error.hpp"
#include "infodesign/linalg.hpp"
#include "oracles.hpp"

using namespace infodesign;
using infodesign::testing::Rng;

TEST_CASE("parse_scalar accepts integers, fractions and decimals") {
    CHECK(parse_scalar("-3") == -3);
    CHECK(parse_scalar("2/6") == Scalar(1, 3));
    CHECK(parse_scalar("0.05") == Scalar(1, 20));
    CHECK(parse_scalar("+1.25") == Scalar(5, 4));
    CHECK(parse_scalar("-0.5") == Scalar(-1, 2));
    CHECK(parse_scalar(" 7 ") == 7);
}

TEST_CASE("parse_scalar rejects malformed text") {
    for (const char* bad : {"", "abc", "1/0", "1.2.3", "1e5", "nan", "1/-2", "--1", "."}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_scalar(bad), ParseError);
    }
}

TEST_CASE("to_string is canonical and round-trips") {
    CHECK(to_string(Scalar(2, 4)) == "1/2");
    CHECK(to_string(Scalar(-6, 3)) == "-2");
    CHECK(to_string(Scalar(0)) == "0");
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Scalar x = rng.rational(-50, 50, 17);
        CHECK(parse_scalar(to_string(x)) == x);
    }
}

TEST_CASE("probability vectors are checked exactly") {
    CHECK(is_probability_vector(Vector{Scalar(1, 3), Scalar(2, 3)}));
    CHECK_FALSE(is_probability_vector(Vector{Scalar(1, 3), Scalar(1, 3)}));
    CHECK_FALSE(is_probability_vector(Vector{Scalar(-1), Scalar(2)}));
    CHECK_FALSE(is_probability_vector(Vector{}));
}

TEST_CASE("matrix products and transposes") {
    auto a = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    auto b = Matrix::from_rows({{1, 0, -1}, {0, 1, 2}});
    auto ab = a * b;
    CHECK(ab == Matrix::from_rows({{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}));
    CHECK(a.transpose().transpose() == a);
    CHECK(a.apply(Vector{1, 1}) == Vector{3, 7, 11});
    CHECK(a.apply_transpose(Vector{1, 1, 1}) == Vector{9, 12});
    CHECK_THROWS_AS(b * b, DimensionMismatch);
}

TEST_CASE("rank agrees with an independent elimination") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto r = static_cast<std::size_t>(rng.integer(1, 5));
        const auto c = static_cast<std::size_t>(rng.integer(1, 6));
        std::vector<Vector> rows(r, Vector(c));
        for (auto& row : rows)
            for (auto& x : row) x = rng.chance(40) ? Scalar(0) : rng.rational(-2, 2, 3);
        if (r > 1 && rng.chance(30)) rows[1] = rows[0];
        CHECK(rank(Matrix::from_rows(rows, c)) == testing::oracle_rank(rows));
    }
}

TEST_CASE("nullspace has complementary dimension and is annihilated") {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const auto r = static_cast<std::size_t>(rng.integer(1, 4));
        const auto c = static_cast<std::size_t>(rng.integer(1, 6));
        Matrix m(r, c);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b) m(a, b) = rng.integer(-2, 2);
        auto k = nullspace(m);
        CHECK(k.dim() + rank(m) == c);
        for (const auto& v : k.basis()) CHECK(m.apply(v) == Vector(r, Scalar(0)));
    }
}

TEST_CASE("subspace canonical form ignores the spanning set") {
    Vector u{1, -1, 0, 0}, v{0, 1, -1, 0};
    Vector w(4);
    for (std::size_t i = 0; i < 4; ++i) w[i] = 2 * u[i] + 3 * v[i];
    CHECK(Subspace::span(4, {u, v}) == Subspace::span(4, {w, u, v, u}));
    CHECK(Subspace::span(4, {u, v}) != Subspace::span(4, {u}));
    CHECK(Subspace::span(4, {}).is_zero());
    CHECK(Subspace::span(4, {Vector(4, Scalar(0))}).is_zero());
}

TEST_CASE("orthogonal complement and containment") {
    auto s = Subspace::span(3, {Vector{1, -1, 0}});
    auto perp = orthogonal_complement(s);
    CHECK(perp.dim() == 2);
    CHECK(perp.contains(Vector{1, 1, 5}));
    CHECK_FALSE(perp.contains(Vector{1, 0, 0}));
    CHECK(orthogonal_complement(perp) == s);
    CHECK(subspace_contains(Subspace::whole(3), s));
    CHECK_FALSE(subspace_contains(s, Subspace::whole(3)));
    CHECK(subspace_contains(s, Subspace(3)));
    CHECK_THROWS_AS(subspace_contains(s, Subspace(4)), DimensionMismatch);
}

TEST_CASE("solve_linear returns a solution or nullopt") {
    auto m = Matrix::from_rows({{1, 1}, {1, -1}});
    auto x = solve_linear(m, Vector{3, 1});
    REQUIRE(x);
    CHECK(*x == Vector{2, 1});
    auto singular = Matrix::from_rows({{1, 1}, {2, 2}});
    CHECK_FALSE(solve_linear(singular, Vector{1, 3}));
    auto y = solve_linear(singular, Vector{1, 2});
    REQUIRE(y);
    CHECK(singular.apply(*y) == Vector{1, 2});
}
