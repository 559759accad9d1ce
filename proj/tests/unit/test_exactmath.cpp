#include "bellpoly/linalg.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace bellpoly;

TEST_CASE("canonical form") {
    CHECK(Rational::canonicalize(2, 4).str() == "1/2");
    CHECK(Rational::canonicalize(3, -6).str() == "-1/2");
    const Rational z = Rational::canonicalize(0, 7);
    CHECK(z.numerator() == 0);
    CHECK(z.denominator() == 1);
    CHECK_THROWS_WITH_AS(Rational::canonicalize(1, 0), "division by zero", std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("parse and print") {
    CHECK(Rational::parse("6/8") == Rational::canonicalize(3, 4));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("+2/4") == Rational::canonicalize(1, 2));
    CHECK_THROWS_AS(Rational::parse("2/-4"), std::invalid_argument);
    CHECK(Rational(7).str() == "7");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::exception);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("decimal rounding is half-up away from zero") {
    CHECK(Rational::canonicalize(2, 3).to_decimal(4) == "0.6667");
    CHECK(Rational::canonicalize(4, 7).to_decimal(4) == "0.5714");
    CHECK(Rational::canonicalize(1, 2).to_decimal(4) == "0.5000");
    CHECK(Rational::canonicalize(1, 20000).to_decimal(4) == "0.0001");
    CHECK(Rational::canonicalize(-1, 20000).to_decimal(4) == "-0.0001");
    CHECK(dyadic(20) == Rational::canonicalize(1, 1048576));
}

TEST_CASE("field identities hold exactly") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 999);
    for (int i = 0; i < 500; ++i) {
        const Rational a = Rational::canonicalize(num(rng), den(rng));
        Rational b = Rational::canonicalize(num(rng), den(rng));
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK(gcd(a.numerator(), a.denominator()) == 1);
        CHECK(a.denominator() > 0);
    }
}

TEST_CASE("solve_linear_system") {
    SUBCASE("identity") {
        auto s = solve_linear_system(RMatrix::identity(2), RVector{Rational::canonicalize(1, 2), Rational::canonicalize(1, 3)});
        REQUIRE(s);
        CHECK(s->unique);
        CHECK(s->x == RVector{Rational::canonicalize(1, 2), Rational::canonicalize(1, 3)});
    }
    SUBCASE("inconsistent") { CHECK_FALSE(solve_linear_system(RMatrix{{1, 1}, {1, 1}}, RVector{1, 2})); }
    SUBCASE("diagonal") {
        auto s = solve_linear_system(RMatrix{{2, 0}, {0, 4}}, RVector{1, 1});
        REQUIRE(s);
        CHECK(s->x == RVector{Rational::canonicalize(1, 2), Rational::canonicalize(1, 4)});
    }
    SUBCASE("underdetermined gives a particular solution") {
        const RMatrix a{{1, 2, 3}};
        auto s = solve_linear_system(a, RVector{6});
        REQUIRE(s);
        CHECK_FALSE(s->unique);
        CHECK(a * s->x == RVector{6});
    }
    SUBCASE("shape mismatch") { CHECK_THROWS_AS(solve_linear_system(RMatrix::identity(2), RVector{1}), std::invalid_argument); }
}

TEST_CASE("substitution reproduces b on random systems") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> e(-4, 4), dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        RMatrix a(r, c);
        RVector x(c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) a(i, j) = Rational::canonicalize(e(rng), 1 + std::abs(e(rng)));
        for (std::size_t j = 0; j < c; ++j) x[j] = e(rng);
        const RVector b = a * x;
        auto s = solve_linear_system(a, b);
        REQUIRE(s);
        CHECK(a * s->x == b);
        CHECK(s->unique == (matrix_rank(a) == c));
    }
}

TEST_CASE("matrix_rank") {
    CHECK(matrix_rank(RMatrix::identity(3)) == 3);
    CHECK(matrix_rank(RMatrix(3, 4)) == 0);
    CHECK(matrix_rank(RMatrix{{1, 2}, {2, 4}}) == 1);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        RMatrix a(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) a(i, j) = e(rng);
        const std::size_t rank = matrix_rank(a);
        RMatrix b = a;
        b.swap_rows(0, 3);
        b.scale_row(1, Rational::canonicalize(-3, 7));
        CHECK(matrix_rank(b) == rank);
    }
}

TEST_CASE("vector arithmetic") {
    const RVector a{1, 2, 3}, b{Rational::canonicalize(1, 2), 0, -1};
    CHECK(dot(a, b) == Rational::canonicalize(-5, 2));
    CHECK(a + b - b == a);
    CHECK(Rational(2) * b == RVector{1, 0, -2});
    CHECK(RVector{0, 1} < RVector{1, 0});
}
