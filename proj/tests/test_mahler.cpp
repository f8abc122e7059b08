#include <doctest.h>

#include <numeric>
#include <random>

#include "quantinv/mahler.hpp"

using namespace quantinv;

namespace {

const Rational kTol(1, 1000000000);  // 1e-9

// Containment of an irrational target goes through the sign of its defining
// polynomial at the enclosure endpoints.
void check_contains_root(const MahlerResult& m, const IntPolynomial& p) {
    CHECK(p.sign_at(m.lower) * p.sign_at(m.upper) <= 0);
}

}  // namespace

TEST_CASE("single root of modulus two") {
    const MahlerResult m = mahler_measure(IntPolynomial({-2, 1}), kTol);
    CHECK(m.contains(Rational(2)));
    CHECK(m.relative_width() <= kTol);
}

TEST_CASE("golden ratio polynomial") {
    // M(x^2-x-1) = phi: the enclosure must bracket the positive root.
    const IntPolynomial p({-1, -1, 1});
    const MahlerResult m = mahler_measure(p, kTol);
    CHECK(m.relative_width() <= kTol);
    CHECK(m.lower > Rational(1));
    check_contains_root(m, p);
    CHECK(m.lower <= Rational::parse("16180339888/10000000000"));
    CHECK(m.upper >= Rational::parse("16180339887/10000000000"));
}

TEST_CASE("complex roots on the unit circle give measure one") {
    const MahlerResult m = mahler_measure(IntPolynomial({1, 1, 1}), kTol);
    CHECK(m.contains(Rational(1)));
    CHECK(m.relative_width() <= kTol);
}

TEST_CASE("all roots inside the unit disc leave only the leading coefficient") {
    // 6x^2-5x+1 = (2x-1)(3x-1)
    const MahlerResult m = mahler_measure(IntPolynomial({1, -5, 6}), kTol);
    CHECK(m.contains(Rational(6)));
    CHECK(m.relative_width() <= kTol);
}

TEST_CASE("half-argument measures, hand-derived") {
    CHECK(mahler_half(IntPolynomial({-1, 2}), kTol).contains(Rational(1)));
    CHECK(mahler_half(IntPolynomial({-1, -1, 1}), kTol).contains(Rational(1)));  // phi(phi-1)=1
    CHECK(mahler_half(IntPolynomial({-2, 1}), kTol).contains(Rational(2)));
}

TEST_CASE("doubled-argument measures, hand-derived") {
    CHECK(mahler_double(IntPolynomial({-1, 2}), kTol).contains(Rational(2)));
    CHECK(mahler_double(IntPolynomial({-1, -1, 1}), kTol).contains(Rational(1)));
    CHECK(mahler_double(IntPolynomial({-2, 1}), kTol).contains(Rational(1)));
}

TEST_CASE("degree-1 closed forms") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<long> pq(1, 40);
    for (int i = 0; i < 40; ++i) {
        long p = pq(rng), q = pq(rng);
        const long g = std::gcd(p, q);
        p /= g;
        q /= g;
        const IntPolynomial poly({-p, q});
        const MahlerResult mh = mahler_half(poly, kTol);
        const MahlerResult md = mahler_double(poly, kTol);
        CHECK(mh.contains(max(Rational(q, 2), Rational(p))));
        CHECK(mh.relative_width() <= kTol);
        CHECK(md.contains(max(Rational(q), Rational(p, 2))));
        CHECK(md.relative_width() <= kTol);
    }
}

TEST_CASE("roots at zero contribute a unit factor") {
    const MahlerResult m = mahler_measure(IntPolynomial({0, -2, 1}), kTol);  // x(x-2)
    CHECK(m.contains(Rational(2)));
}

TEST_CASE("constant polynomials are exact") {
    const MahlerResult m = mahler_measure(IntPolynomial({-7}), kTol);
    CHECK(m.lower == Rational(7));
    CHECK(m.upper == Rational(7));
    CHECK(m.iterations == 0);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(mahler_measure(IntPolynomial::zero(), kTol), ZeroPolynomial);
    MahlerOptions tight;
    tight.max_steps = 2;
    CHECK_THROWS_AS(mahler_measure(IntPolynomial({-1, -1, 1}), kTol, tight), NonConvergence);
    CHECK_THROWS_AS(mahler_measure(IntPolynomial({-2, 1}), Rational(-1)), std::invalid_argument);
}

namespace {

IntPolynomial random_poly(std::mt19937& rng, int max_degree, long coeff_range) {
    std::uniform_int_distribution<long> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<int> deg(1, max_degree);
    while (true) {
        const int d = deg(rng);
        std::vector<BigInt> cs(static_cast<size_t>(d) + 1);
        for (auto& c : cs) c = coeff(rng);
        if (cs.back() == 0) continue;
        return IntPolynomial(std::move(cs));
    }
}

}  // namespace

TEST_CASE("multiplicativity on random products") {
    std::mt19937 rng(2024);
    const Rational tol(1, 1000000);
    for (int i = 0; i < 30; ++i) {
        const IntPolynomial p = random_poly(rng, 6, 5);
        const IntPolynomial q = random_poly(rng, 6, 5);
        const MahlerResult mp = mahler_measure(p, tol);
        const MahlerResult mq = mahler_measure(q, tol);
        const MahlerResult mpq = mahler_measure(p * q, tol);
        CHECK(mpq.upper >= mp.lower * mq.lower);
        CHECK(mpq.lower <= mp.upper * mq.upper);
    }
}

TEST_CASE("static inequalities against the enclosure") {
    std::mt19937 rng(55);
    for (int i = 0; i < 50; ++i) {
        const IntPolynomial p = random_poly(rng, 8, 9);
        const MahlerResult m = mahler_measure(p, Rational(1, 1000000));
        const auto norms = norm_report(p);
        const Rational ends = max(Rational(abs(p.coeff(0))), Rational(abs(p.leading())));
        CHECK(m.upper >= ends);                            // M >= max(|r_0|, |r_q|)
        CHECK(m.lower * m.lower <= Rational(norms.l2_norm_sq));  // Landau
    }
}

TEST_CASE("graeffe consistency: measure squares under one step") {
    std::mt19937 rng(66);
    const Rational tol(1, 1000000);
    for (int i = 0; i < 25; ++i) {
        const IntPolynomial p = random_poly(rng, 5, 6);
        const MahlerResult m = mahler_measure(p, tol);
        const MahlerResult g = mahler_measure(p.graeffe_step(), tol);
        CHECK(g.upper >= m.lower * m.lower);
        CHECK(g.lower <= m.upper * m.upper);
    }
}

TEST_CASE("coefficient bound checks: worked cases") {
    const auto r1 = verify_coefficient_bounds(IntPolynomial({-1, -1, 1}));
    CHECK(r1.all());
    // x-2: the half-argument inequality reads 2 <= 2^1 * 2 = 4.
    const auto r2 = verify_coefficient_bounds(IntPolynomial({-2, 1}));
    CHECK(r2.all());
    CHECK(r2.measure.contains(Rational(2)));
    CHECK(r2.measure_half.contains(Rational(2)));
    // Equality family (every root inside radius 1/2): must still pass.
    const auto r3 = verify_coefficient_bounds(IntPolynomial({2, 5}));
    CHECK(r3.all());
}

TEST_CASE("coefficient bound checks: random battery") {
    std::mt19937 rng(90125);
    for (int i = 0; i < 60; ++i) CHECK(verify_coefficient_bounds(random_poly(rng, 8, 9)).all());
}

TEST_CASE("norm report fields") {
    const auto n = norm_report(IntPolynomial({3, -5, 2, 1}));
    CHECK(n.inf_norm == 5);
    CHECK(n.l2_norm_sq == 9 + 25 + 4 + 1);
    CHECK(n.degree == 3);
    CHECK(n.binomial_mid == 3);
}
