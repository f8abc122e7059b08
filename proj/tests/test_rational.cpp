#include <doctest.h>

#include <random>

#include "quantinv/rational.hpp"

using namespace quantinv;

TEST_CASE("arithmetic on simple fractions") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 3) / Rational(2, 3) == Rational(1, 2));
}

TEST_CASE("construction canonicalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(2, 4).numerator() == 1);
    CHECK(Rational(2, 4).denominator() == 2);
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(3, -6).denominator() == 2);
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational(0, 7).str() == "0");
}

TEST_CASE("division by zero is rejected") {
    CHECK_THROWS_AS(Rational(1, 3) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), DivisionByZero);
    CHECK_THROWS_AS(Rational(0).reciprocal(), DivisionByZero);
}

TEST_CASE("parsing and printing round-trip") {
    CHECK(Rational::parse("3/2").str() == "3/2");
    CHECK(Rational::parse("-7/21").str() == "-1/3");
    CHECK(Rational::parse("5").str() == "5");
    CHECK(Rational::parse("-5").str() == "-5");
    CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
}

TEST_CASE("floor, ceil, frac") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(3).floor() == 3);
    CHECK(Rational(7, 2).frac() == Rational(1, 2));
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(-1, 3).frac() == Rational(2, 3));
}

TEST_CASE("ordering is exact") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(-1, 2) < Rational(1, 1000000));
    CHECK(Rational(10, 3) > Rational(3));
}

// Randomized cross-multiplication identities: a/b + c/d = (ad+cb)/(bd), etc.,
// verified against direct big-integer products.
TEST_CASE("randomized arithmetic agrees with cross-multiplication") {
    std::mt19937 rng(20240511);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 500; ++i) {
        const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const Rational x(a, b), y(c, d);

        const Rational sum = x + y;
        CHECK(sum.numerator() * (BigInt(b) * d) == (BigInt(a) * d + BigInt(c) * b) * sum.denominator());

        const Rational prod = x * y;
        CHECK(prod.numerator() * (BigInt(b) * d) == BigInt(a) * c * prod.denominator());

        if (c != 0) {
            const Rational quot = x / y;
            CHECK(quot.numerator() * (BigInt(b) * c) == BigInt(a) * d * quot.denominator());
        }

        const bool lt = x < y;
        CHECK(lt == (BigInt(a) * d < BigInt(c) * b));
    }
}

TEST_CASE("from_double is exact for representable values") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.375) == Rational(3, 8));
    CHECK(Rational::from_double(-2.0) == Rational(-2));
}
