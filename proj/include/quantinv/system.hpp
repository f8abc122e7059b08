#pragma once

#include <span>
#include <vector>

#include "quantinv/algebraic.hpp"

namespace quantinv {

/// The plant x(k+1) = a x(k) + b u(k), y(k) = q(c x(k)) with the uniform
/// partition of rate delta and a finite input alphabet.
struct QuantizedSystem {
    ExactReal a;
    Rational b{1}, c{1}, delta{1};
    std::vector<Rational> inputs;  // sorted ascending, duplicates rejected
};

/// Validates invariants: inputs nonempty and duplicate-free, delta > 0,
/// b != 0, c != 0. Inputs come back sorted.
QuantizedSystem make_quantized_system(ExactReal a, Rational b, Rational c, Rational delta,
                                      std::vector<Rational> inputs);

/// The substitution factors that took the original system to delta=b=c=1.
struct SubstitutionProvenance {
    Rational state_scale{1};  // normalized state = (c/delta) * original state
    Rational input_scale{1};  // normalized input = (c*b/delta) * original input
};

/// x(k+1) = a x(k) + u(k), y(k) = floor(x(k)).
struct NormalizedSystem {
    ExactReal a;
    std::vector<Rational> inputs;
    SubstitutionProvenance provenance;
};

/// Scales inputs by c*b/delta; the floor of the normalized state equals the
/// original quantizer index at every step.
NormalizedSystem normalize(const QuantizedSystem& sys);

/// All pairwise differences of the alphabet, sorted and deduplicated.
/// Symmetric and contains 0.
std::vector<Rational> difference_alphabet(const std::vector<Rational>& inputs);

/// z(k+1) = a z(k) + v(k), v in U - U.
struct DifferenceSystem {
    ExactReal a;
    std::vector<Rational> diff_inputs;
};

DifferenceSystem make_difference_system(const NormalizedSystem& sys);

struct Trajectory {
    bool exact = true;                       // rational dynamics
    std::vector<Rational> states;            // exact mode, length n+1
    std::vector<Interval> state_enclosures;  // enclosure mode, length n+1
    std::vector<BigInt> outputs;             // floor(x(k))
    std::vector<bool> output_indeterminate;  // enclosure straddles a cell edge
    std::vector<Rational> inputs_used;       // length n

    bool any_indeterminate() const;
};

/// Runs n steps from x0. Inputs must come from the system alphabet unless
/// allow_any_inputs is set (difference-system runs). Exact states for
/// rational a; certified enclosures otherwise, with outputs flagged
/// indeterminate when the refinement budget cannot separate a cell edge.
Trajectory simulate(const NormalizedSystem& sys, const Rational& x0,
                    std::span<const Rational> inputs, size_t n, bool allow_any_inputs = false);

}  // namespace quantinv
