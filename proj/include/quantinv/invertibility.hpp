#pragma once

#include <optional>
#include <string>

#include "quantinv/mahler.hpp"
#include "quantinv/system.hpp"

namespace quantinv {

/// Period-2 orbit (or fixed point, for negative dynamics) of the difference
/// system strictly inside (-1,1), certifying failure of one-step
/// D-invertibility.
struct TwoCycleWitness {
    Rational v;       // violating nonzero difference input
    int period = 2;   // 2: z alternates under (v,-v); 1: fixed point under v
    bool exact = true;
    Rational z1, z2;  // exact mode; z1 = -v/(a+1), z2 = v/(a+1) for a > 0
    Interval z1_enclosure, z2_enclosure;  // enclosure mode
};

struct UldiVerdict {
    enum class Status { UldiOneStep, NotUldi };
    Status status = Status::UldiOneStep;
    bool vacuous = false;  // singleton alphabet: no nonzero difference input
    Rational min_nonzero_abs_v{0};
    std::optional<TwoCycleWitness> witness;  // present iff NotUldi
};

/// One-step D-invertibility test: ULDI iff min_{v!=0} |v| >= |a| + 1
/// (certified comparison for algebraic a). The equality case is ULDI: the
/// two-cycle then sits exactly on the boundary, outside the open interval.
UldiVerdict uldi_check(const ExactReal& a, const std::vector<Rational>& V);

/// Every computable upper bound on the fractional-part margin of a, with the
/// conservative minimum in `best`.
struct EpsilonBounds {
    std::optional<Rational> rational_bound;  // min(1/|p|, 1/q) for a = p/q
    std::optional<Interval> mahler_half_bound;    // enclosure of 1/M(P_a(x/2))
    std::optional<Interval> mahler_double_bound;  // enclosure of 1/M(2^-K P_a(2x))
    std::optional<Rational> coeff_bound;  // min_i C(K,i) 2^min(i,K-i) / |alpha_i|
    Rational best{1};
};

EpsilonBounds epsilon_bounds(const ExactReal& a,
                             const Rational& mahler_tol = Rational(1, 1000000000));

struct OrbitCertificate {
    enum class Kind { EmptyCertified, PeriodicWitness, Unknown };
    Kind kind = Kind::Unknown;
    Interval target;
    int fixpoint_iterations = 0;
    // Periodic witness: z* = (sum a^(L-1-i) v_{i+1}) / (1 - a^L), all L
    // iterates strictly inside the target.
    std::vector<Rational> cycle_word;
    int period = 0;
    bool exact = true;
    Rational cycle_start{0};
    Interval cycle_start_enclosure;
};

struct OrbitSearchOptions {
    int max_period = 6;
    int max_fixpoint_iters = 32;
    size_t max_union_parts = 2048;
    size_t max_words = 4000000;
};

/// Decides whether the difference system z+ = a z + v admits an infinite
/// orbit inside `target` entered through some nonzero v. EmptyCertified is a
/// proof that none exists; PeriodicWitness is a checkable cycle; Unknown
/// means the budgets ran out. Requires |a| > 1.
OrbitCertificate invariant_orbit_search(const ExactReal& a, const std::vector<Rational>& V,
                                        const Interval& target, int max_period,
                                        int max_fixpoint_iters,
                                        const OrbitSearchOptions& opts = {});

/// Runs the orbit search on (-1+eps.best, 1-eps.best). A periodic witness
/// there lives inside the true margin interval as well, so it soundly rules
/// out uniform left invertibility. Throws IntervalEmpty when eps.best >= 1.
std::optional<OrbitCertificate> not_uli_via_orbit(const ExactReal& a,
                                                  const std::vector<Rational>& V,
                                                  const EpsilonBounds& eps,
                                                  const OrbitSearchOptions& opts = {});

/// Two initial states and two input words with identical outputs throughout
/// and inputs differing at every recorded divergence step.
struct CounterexampleWitness {
    Rational x0, x0_prime;
    std::vector<Rational> inputs, inputs_prime;
    std::vector<size_t> divergence_steps;
    std::vector<BigInt> outputs;
};

/// Constructive indistinguishable pair for |a| > 2 when two inputs differ by
/// less than |a|: grows the common-image set cell by cell (ties to the
/// smaller index), diverging at step 0 and whenever the set fills a cell.
/// The witness is verified by exact simulation before being returned.
/// Rational dynamics only.
CounterexampleWitness counterexample_expansive(const ExactReal& a,
                                               const std::vector<Rational>& inputs, int length);

/// The instantiated gap inequality |a| - eps_bar <= min|v| - 1 <= |a|
/// (non-strict on both sides) plus route diagnostics.
struct GapReport {
    Rational eps_bar{1};
    Rational min_nonzero_abs_v{0};
    bool lower_holds = false;
    bool upper_holds = false;
    std::string diagnostics;
};

struct UliVerdict {
    enum class Status { UliOneStep, NotUli, UndecidedGap, UnsupportedContractive };
    Status status = Status::UndecidedGap;
    std::optional<UldiVerdict> uldi;
    std::optional<OrbitCertificate> orbit;
    std::optional<CounterexampleWitness> counterexample;
    std::optional<GapReport> gap;
    std::optional<int> k;  // distinguishability time
    std::optional<int> l;  // waiting time
};

struct AnalyzeOptions {
    OrbitSearchOptions orbit;
    int counterexample_length = 24;
    Rational mahler_tol{1, 1000000000};
};

/// Full decision chain: normalize, contractivity gate, one-step ULDI test,
/// counterexample construction, orbit certificate, otherwise the gap report.
UliVerdict analyze(const QuantizedSystem& sys, const AnalyzeOptions& opts = {});

/// Reconstructs the input word from an output word of a one-step invertible
/// system: per step the unique u with (a [y,y+1) + u) meeting [y',y'+1).
std::vector<Rational> invert_sequence(const NormalizedSystem& sys,
                                      std::span<const BigInt> outputs);

/// One candidate exceptional denominator: q passing the fractional-part
/// inequality 1 - frac(tau q) < q / (floor(tau q) + 1), with a = p/q,
/// p = floor(tau q) + 1.
struct ExceptionalCandidate {
    long q = 0;
    BigInt p;
    Rational a;
    Rational lhs, rhs;
};

struct ClassifyResult {
    std::vector<ExceptionalCandidate> hits;
    /// For rational tau = l/m: the m values the left-hand side can take,
    /// descending.
    std::vector<Rational> lhs_values;
};

ClassifyResult classify_exceptional(const Rational& tau, long q_max);
/// Floating-point probe for irrational tau (documented double precision).
ClassifyResult classify_exceptional(double tau, long q_max);

}  // namespace quantinv
