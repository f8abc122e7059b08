#include <doctest.h>

#include <random>

#include "quantinv/system.hpp"

using namespace quantinv;

namespace {

QuantizedSystem simple(const Rational& a, std::vector<Rational> inputs) {
    return make_quantized_system(a, Rational(1), Rational(1), Rational(1), std::move(inputs));
}

}  // namespace

TEST_CASE("construction validates the alphabet and gains") {
    CHECK_THROWS_AS(make_quantized_system(Rational(2), Rational(1), Rational(1), Rational(1), {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_quantized_system(Rational(2), Rational(1), Rational(1), Rational(1),
                                          {Rational(1), Rational(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_quantized_system(Rational(2), Rational(0), Rational(1), Rational(1),
                                          {Rational(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_quantized_system(Rational(2), Rational(1), Rational(1), Rational(-1),
                                          {Rational(0)}),
                    std::invalid_argument);
}

TEST_CASE("normalization: the worked substitutions") {
    // (a=2, b=3, c=1/2, delta=2, U={0,6}) -> U={0, 9/2}
    const auto n1 = normalize(make_quantized_system(Rational(2), Rational(3), Rational(1, 2),
                                                    Rational(2), {Rational(0), Rational(6)}));
    CHECK(n1.inputs == std::vector<Rational>{Rational(0), Rational(9, 2)});
    CHECK(n1.provenance.input_scale == Rational(3, 4));

    // identity case
    const auto n2 = normalize(simple(Rational(3, 2), {Rational(0), Rational(3)}));
    CHECK(n2.inputs == std::vector<Rational>{Rational(0), Rational(3)});
    CHECK(n2.provenance.input_scale == Rational(1));

    // delta-scaling only: (a=2, delta=1/2, U={0,1}) -> U={0,2}
    const auto n3 = normalize(make_quantized_system(Rational(2), Rational(1), Rational(1),
                                                    Rational(1, 2), {Rational(0), Rational(1)}));
    CHECK(n3.inputs == std::vector<Rational>{Rational(0), Rational(2)});
}

TEST_CASE("difference alphabet") {
    CHECK(difference_alphabet({Rational(0), Rational(3)}) ==
          std::vector<Rational>{Rational(-3), Rational(0), Rational(3)});
    // U = {-2,-1,0,1,2} (M=2, delta=1): V = {-4..4}
    std::vector<Rational> u;
    for (long k = -2; k <= 2; ++k) u.push_back(Rational(k));
    std::vector<Rational> expect;
    for (long k = -4; k <= 4; ++k) expect.push_back(Rational(k));
    CHECK(difference_alphabet(u) == expect);
    CHECK(difference_alphabet({Rational(5)}) == std::vector<Rational>{Rational(0)});
}

TEST_CASE("difference system carries the dynamics and the difference alphabet") {
    const auto norm = normalize(simple(Rational(3, 2), {Rational(0), Rational(3)}));
    const DifferenceSystem d = make_difference_system(norm);
    CHECK(is_rational(d.a));
    CHECK(as_rational(d.a) == Rational(3, 2));
    CHECK(d.diff_inputs == std::vector<Rational>{Rational(-3), Rational(0), Rational(3)});
}

TEST_CASE("difference alphabet is symmetric and holds zero") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-12, 12), den(1, 12);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> u;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) u.emplace_back(num(rng), den(rng));
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        const auto v = difference_alphabet(u);
        CHECK(std::binary_search(v.begin(), v.end(), Rational(0)));
        for (const auto& d : v) CHECK(std::binary_search(v.begin(), v.end(), -d));
    }
}

TEST_CASE("simulation: worked trajectories") {
    const auto sys = normalize(simple(Rational(3, 2), {Rational(0), Rational(3)}));
    const std::vector<Rational> w{Rational(3)};
    const Trajectory t = simulate(sys, Rational(1, 2), w, 1);
    CHECK(t.states == std::vector<Rational>{Rational(1, 2), Rational(15, 4)});
    CHECK(t.outputs == std::vector<BigInt>{BigInt(0), BigInt(3)});

    const auto fix = normalize(simple(Rational(1), {Rational(0)}));
    const std::vector<Rational> zz{Rational(0), Rational(0)};
    const Trajectory t2 = simulate(fix, Rational(0), zz, 2);
    CHECK(t2.outputs == std::vector<BigInt>{BigInt(0), BigInt(0), BigInt(0)});

    // difference-system run: a=2, z0=2/3, v=(-2, 2) cycles the two-cycle
    const auto dsys = normalize(simple(Rational(2), {Rational(0), Rational(2)}));
    const std::vector<Rational> vs{Rational(-2), Rational(2)};
    const Trajectory t3 = simulate(dsys, Rational(2, 3), vs, 2, /*allow_any_inputs=*/true);
    CHECK(t3.states ==
          std::vector<Rational>{Rational(2, 3), Rational(-2, 3), Rational(2, 3)});
}

TEST_CASE("inputs outside the alphabet are rejected unless overridden") {
    const auto sys = normalize(simple(Rational(2), {Rational(0), Rational(1)}));
    const std::vector<Rational> w{Rational(5)};
    CHECK_THROWS_AS(simulate(sys, Rational(0), w, 1), std::invalid_argument);
    CHECK_NOTHROW(simulate(sys, Rational(0), w, 1, true));
    CHECK_THROWS_AS(simulate(sys, Rational(0), w, 2, true), std::invalid_argument);
}

TEST_CASE("normalization preserves quantizer semantics on random systems") {
    std::mt19937 rng(4711);
    std::uniform_int_distribution<long> num(-8, 8), den(1, 6), pick(0, 100);
    for (int trial = 0; trial < 100; ++trial) {
        const Rational a(num(rng), den(rng));
        Rational b(0), c(0), delta(0);
        while (b.is_zero()) b = Rational(num(rng), den(rng));
        while (c.is_zero()) c = Rational(num(rng), den(rng));
        while (delta.sign() <= 0) delta = Rational(std::abs(num(rng)) + 1, den(rng));
        std::vector<Rational> inputs;
        const int n = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) inputs.emplace_back(num(rng), den(rng));
        std::sort(inputs.begin(), inputs.end());
        inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

        const auto sys = make_quantized_system(a, b, c, delta, inputs);
        const auto norm = normalize(sys);

        // Original system, simulated directly: quantizer index floor(c x / delta).
        Rational x(num(rng), den(rng));
        Rational xhat = norm.provenance.state_scale * x;
        for (int step = 0; step < 10; ++step) {
            const Rational u = inputs[static_cast<size_t>(pick(rng)) % inputs.size()];
            const BigInt original_index = (c * x / delta).floor();
            const BigInt normalized_index = xhat.floor();
            CHECK(original_index == normalized_index);
            x = a * x + b * u;
            xhat = a * xhat + norm.provenance.input_scale * u;
        }
    }
}

TEST_CASE("simulation is deterministic and exactly reproducible") {
    const auto sys = normalize(simple(Rational(7, 3), {Rational(0), Rational(5, 2)}));
    std::vector<Rational> w(20);
    for (size_t i = 0; i < w.size(); ++i) w[i] = (i % 3 == 0) ? Rational(5, 2) : Rational(0);
    const Trajectory t1 = simulate(sys, Rational(1, 7), w, w.size());
    const Trajectory t2 = simulate(sys, Rational(1, 7), w, w.size());
    CHECK(t1.states == t2.states);
    CHECK(t1.outputs == t2.outputs);
}

TEST_CASE("refinement budget honors the environment override") {
    unsetenv("QUANTINV_PRECISION_BITS");
    CHECK(precision_budget_bits() == 256);
    setenv("QUANTINV_PRECISION_BITS", "512", 1);
    CHECK(precision_budget_bits() == 512);
    setenv("QUANTINV_PRECISION_BITS", "garbage", 1);
    CHECK(precision_budget_bits() == 256);
    unsetenv("QUANTINV_PRECISION_BITS");
}

TEST_CASE("outputs too close to a cell edge are flagged, not guessed") {
    // Walk up the convergents p/q of sqrt(2): |sqrt(2) p - 2q| = O(1/q), so
    // sqrt(2) * (p/q) sits within ~1/q^2 of the integer 2. Deep enough, that
    // distance drops below any refinement budget and the output at step 1
    // must come back indeterminate.
    BigInt p(1), q(1);
    for (int i = 0; i < 220; ++i) {
        const BigInt np = p + 2 * q, nq = p + q;
        p = np;
        q = nq;
    }
    const ExactReal sqrt2 = make_algebraic(IntPolynomial({-2, 0, 1}),
                                           Interval::closed(Rational(1), Rational(2)));
    const auto sys = normalize(make_quantized_system(sqrt2, Rational(1), Rational(1), Rational(1),
                                                     {Rational(0)}));
    const std::vector<Rational> w{Rational(0)};
    const Trajectory t = simulate(sys, Rational(p, q), w, 1);
    CHECK(!t.exact);
    REQUIRE(t.output_indeterminate.size() == 2);
    CHECK(!t.output_indeterminate[0]);
    CHECK(t.output_indeterminate[1]);
    CHECK(t.any_indeterminate());
}

TEST_CASE("algebraic dynamics produce certified enclosures") {
    const ExactReal sqrt2 = make_algebraic(IntPolynomial({-2, 0, 1}),
                                           Interval::closed(Rational(1), Rational(2)));
    const auto sys = normalize(
        make_quantized_system(sqrt2, Rational(1), Rational(1), Rational(1),
                              {Rational(0), Rational(3)}));
    const std::vector<Rational> w{Rational(3), Rational(0), Rational(3)};
    const Trajectory t = simulate(sys, Rational(1, 2), w, 3);
    CHECK(!t.exact);
    REQUIRE(t.state_enclosures.size() == 4);
    CHECK(!t.any_indeterminate());
    // x1 = sqrt2/2 + 3 in [3.7, 3.8] -> cell 3
    CHECK(t.outputs[1] == 3);
    // Enclosures nest the true values: check the first step by hand.
    CHECK(t.state_enclosures[1].lo() < Rational(375, 100));
    CHECK(t.state_enclosures[1].hi() > Rational(370, 100));
}
