#include <doctest.h>

#include "quantinv/algebraic.hpp"
#include "quantinv/errors.hpp"

using namespace quantinv;

TEST_CASE("golden ratio from x^2 - x - 1 on [1,2]") {
    const AlgebraicNumber phi =
        make_algebraic(IntPolynomial({-1, -1, 1}), Interval::closed(Rational(1), Rational(2)));
    CHECK(phi.degree() == 2);
    CHECK(phi.sign() == 1);
    // Quadratic formula: phi = (1+sqrt 5)/2 in (1.6180339887, 1.6180339888).
    CHECK(phi.cmp(Rational::parse("16180339887/10000000000")) == 1);
    CHECK(phi.cmp(Rational::parse("16180339888/10000000000")) == -1);
    CHECK(phi.abs_cmp(Rational(1)) == 1);
    CHECK(phi.abs_cmp(Rational(2)) == -1);
}

TEST_CASE("content screen") {
    CHECK_THROWS_AS(make_algebraic(IntPolynomial({-4, 2}), Interval::closed(Rational(0), Rational(5))),
                    NotPrimitive);
}

TEST_CASE("root-count screens on the hint interval") {
    const IntPolynomial x2m2({-2, 0, 1});
    CHECK_NOTHROW(make_algebraic(x2m2, Interval::closed(Rational(0), Rational(3))));
    CHECK_THROWS_AS(make_algebraic(x2m2, Interval::closed(Rational(-2), Rational(2))),
                    MultipleRootsInInterval);
    CHECK_THROWS_AS(make_algebraic(x2m2, Interval::closed(Rational(3), Rational(4))),
                    NoRootInInterval);
}

TEST_CASE("rational-root and squarefree screens") {
    // 6x^2 + x - 1 = (2x+1)(3x-1): rational roots, degree 2.
    CHECK_THROWS_AS(make_algebraic(IntPolynomial({-1, 1, 6}),
                                   Interval::closed(Rational(0), Rational(1))),
                    ReducibleByRationalRoot);
    // (x^2-2)^2 is primitive but not squarefree.
    const IntPolynomial sq = IntPolynomial({-2, 0, 1}) * IntPolynomial({-2, 0, 1});
    CHECK_THROWS_AS(make_algebraic(sq, Interval::closed(Rational(1), Rational(2))), NotSquarefree);
}

TEST_CASE("degree-1 polynomials behave as exact rationals") {
    const AlgebraicNumber half =
        make_algebraic(IntPolynomial({-1, 2}), Interval::closed(Rational(0), Rational(1)));
    CHECK(half.rational_value() == Rational(1, 2));
    CHECK(half.enclosure(200).is_point());
    CHECK(half.cmp(Rational(1, 2)) == 0);
}

TEST_CASE("enclosures nest monotonically") {
    const AlgebraicNumber r =
        make_algebraic(IntPolynomial({-2, 0, 1}), Interval::closed(Rational(1), Rational(2)));
    Interval coarse = r.enclosure(8);
    Interval fine = r.enclosure(64);
    Interval finer = r.enclosure(128);
    CHECK(coarse.contains(fine));
    CHECK(fine.contains(finer));
    CHECK(finer.length() <= Rational(BigInt(1), BigInt(1) << 120));
    // The designated root stays inside: sign change brackets it.
    CHECK(r.min_poly().sign_at(finer.lo()) * r.min_poly().sign_at(finer.hi()) < 0);
}

TEST_CASE("comparisons against rationals are certified") {
    const AlgebraicNumber sqrt2 =
        make_algebraic(IntPolynomial({-2, 0, 1}), Interval::closed(Rational(1), Rational(2)));
    CHECK(sqrt2.cmp(Rational(7, 5)) == 1);
    CHECK(sqrt2.cmp(Rational(3, 2)) == -1);
    CHECK(sqrt2.cmp(Rational::parse("141421356237/100000000000")) == 1);

    const AlgebraicNumber neg =
        make_algebraic(IntPolynomial({-2, 0, 1}), Interval::closed(Rational(-2), Rational(-1)));
    CHECK(neg.sign() == -1);
    CHECK(neg.abs_cmp(Rational(7, 5)) == 1);
    CHECK(neg.abs_cmp(Rational(3, 2)) == -1);
}

TEST_CASE("exact real helpers dispatch on both alternatives") {
    const ExactReal r = Rational(3, 2);
    const ExactReal s = make_algebraic(IntPolynomial({-2, 0, 1}),
                                       Interval::closed(Rational(1), Rational(2)));
    CHECK(is_rational(r));
    CHECK(!is_rational(s));
    CHECK(cmp(r, Rational(2)) == -1);
    CHECK(abs_cmp(s, Rational(1)) == 1);
    CHECK(min_poly_of(r) == IntPolynomial({-3, 2}));
    CHECK(enclosure_of(r).is_point());
    CHECK(approx_of(s) == doctest::Approx(1.4142135624).epsilon(1e-9));
}

TEST_CASE("interval_affine_image dispatches per the dynamics kind") {
    const Interval I = Interval::half_open(Rational(0), Rational(1));
    CHECK(interval_affine_image(I, Rational(3), Rational(1)) ==
          Interval::half_open(Rational(1), Rational(4)));
    const ExactReal sqrt2 = make_algebraic(IntPolynomial({-2, 0, 1}),
                                           Interval::closed(Rational(1), Rational(2)));
    const Interval img = interval_affine_image(I, sqrt2, Rational(0), 40);
    CHECK(img.contains(Rational(7, 5)));
    CHECK(img.hi() < Rational(15, 10));
}
