#include <doctest.h>

#include <random>

#include "quantinv/algebraic.hpp"
#include "quantinv/interval.hpp"

using namespace quantinv;

TEST_CASE("construction and emptiness") {
    CHECK(Interval::empty().is_empty());
    CHECK(Interval::open(Rational(1), Rational(1)).is_empty());
    CHECK(Interval(Rational(2), Rational(1), true, true).is_empty());
    CHECK(Interval::point(Rational(1)).is_point());
    CHECK(Interval::half_open(Rational(0), Rational(1)).contains(Rational(0)));
    CHECK(!Interval::half_open(Rational(0), Rational(1)).contains(Rational(1)));
}

TEST_CASE("affine image, rational multiplier") {
    const Interval I = Interval::half_open(Rational(0), Rational(1));
    const Interval J = I.affine(Rational(3), Rational(1));
    CHECK(J == Interval::half_open(Rational(1), Rational(4)));

    const Interval K = Interval::open(Rational(-1), Rational(1)).affine(Rational(-2), Rational(0));
    CHECK(K == Interval::open(Rational(-2), Rational(2)));

    // Orientation flip moves the closure flags with the endpoints.
    const Interval L = I.affine(Rational(-1), Rational(0));
    CHECK(L == Interval(Rational(-1), Rational(0), false, true));

    CHECK(I.affine(Rational(0), Rational(5)) == Interval::point(Rational(5)));
}

TEST_CASE("affine image with an algebraic multiplier is an outward enclosure") {
    const AlgebraicNumber sqrt2 =
        make_algebraic(IntPolynomial({-2, 0, 1}), Interval::closed(Rational(1), Rational(2)));
    const Interval I = Interval::half_open(Rational(0), Rational(1));
    // Refine to 1e-9: the upper endpoint must land between the two decimal
    // brackets around sqrt(2).
    const Interval abox = sqrt2.enclosure(40);
    const Interval img = I.affine_enclosure(abox, Rational(0));
    CHECK(img.lo() == Rational(0));
    CHECK(img.hi() > Rational::parse("141421356/100000000"));
    CHECK(img.hi() < Rational::parse("141421357/100000000"));
    CHECK(!img.hi_closed());
}

TEST_CASE("affine image is measure-exact for rational multipliers") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
    for (int i = 0; i < 200; ++i) {
        Rational lo(num(rng), den(rng));
        Rational hi = lo + Rational(1 + (num(rng) & 7), den(rng));
        Rational a(num(rng), den(rng));
        Rational v(num(rng), den(rng));
        Interval I = Interval::half_open(lo, hi);
        CHECK(I.affine(a, v).length() == a.abs() * I.length());
    }
}

TEST_CASE("intersection honors closure flags") {
    const Interval a = Interval::half_open(Rational(0), Rational(1));
    const Interval b = Interval::half_open(Rational(1), Rational(2));
    CHECK(a.intersect(b).is_empty());
    const Interval c = Interval::closed(Rational(1), Rational(2));
    CHECK(a.intersect(c).is_empty());
    const Interval d = Interval::closed(Rational(0), Rational(1));
    CHECK(d.intersect(c) == Interval::point(Rational(1)));
}

TEST_CASE("union normalization merges as the spec's examples say") {
    const auto u1 = IntervalUnion::normalize({Interval::half_open(Rational(0), Rational(1)),
                                              Interval::half_open(Rational(1), Rational(2))});
    REQUIRE(u1.size() == 1);
    CHECK(u1.parts()[0] == Interval::half_open(Rational(0), Rational(2)));

    const auto u2 = IntervalUnion::normalize({Interval::half_open(Rational(0), Rational(2)),
                                              Interval::half_open(Rational(1), Rational(3))});
    REQUIRE(u2.size() == 1);
    CHECK(u2.parts()[0] == Interval::half_open(Rational(0), Rational(3)));

    const auto u3 = IntervalUnion::normalize({});
    CHECK(u3.is_empty());
    CHECK(u3.measure() == Rational(0));

    // Open-open abutment does not merge: the gap point is genuinely missing.
    const auto u4 = IntervalUnion::normalize(
        {Interval::open(Rational(0), Rational(1)), Interval::open(Rational(1), Rational(2))});
    CHECK(u4.size() == 2);
}

TEST_CASE("union measure is preserved by normalization") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Interval> parts;
        // Disjoint-by-construction half-open pieces on a common grid, then
        // shuffled duplicates to exercise merging.
        std::vector<long> cuts;
        for (int i = 0; i < 6; ++i) cuts.push_back(num(rng));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        Rational expected(0);
        for (size_t i = 0; i + 1 < cuts.size(); i += 2) {
            Interval piece = Interval::half_open(Rational(cuts[i]), Rational(cuts[i + 1]));
            expected += piece.length();
            parts.push_back(piece);
        }
        auto u = IntervalUnion::normalize(parts);
        CHECK(u.measure() == expected);
        // Idempotent and order-insensitive.
        std::reverse(parts.begin(), parts.end());
        CHECK(IntervalUnion::normalize(parts) == u);
    }
}

TEST_CASE("interval union set operations") {
    auto u = IntervalUnion::normalize({Interval::open(Rational(-1), Rational(0)),
                                       Interval::open(Rational(1), Rational(3))});
    auto w = u.intersect(Interval::closed(Rational(-1), Rational(2)));
    REQUIRE(w.size() == 2);
    CHECK(w.parts()[0] == Interval::open(Rational(-1), Rational(0)));
    CHECK(w.parts()[1] == Interval(Rational(1), Rational(2), false, true));

    auto img = u.affine(Rational(-1), Rational(0));
    CHECK(img.parts()[0] == Interval::open(Rational(-3), Rational(-1)));
}
