#pragma once

#include "quantinv/int_polynomial.hpp"

namespace quantinv {

/// Certified enclosure of a Mahler measure.
struct MahlerResult {
    Rational lower;  // certified lower bound
    Rational upper;  // certified upper bound
    int iterations = 0;  // Graeffe steps used

    Rational relative_width() const { return (upper - lower) / upper; }
    bool contains(const Rational& v) const { return lower <= v && v <= upper; }
};

struct MahlerOptions {
    /// Hard cap on Graeffe steps (2^n-th roots must fit an unsigned long).
    int max_steps = 62;
    /// Floor for the working precision of the directed-rounded phase.
    unsigned min_precision_bits = 128;
    /// Coefficient size at which exact integer iteration hands over to
    /// directed-rounded interval iteration.
    unsigned cutover_bits = 3072;
};

/// Enclosure of M(P) = |lead| * prod max(1, |root|) with relative width
/// <= tol. Brackets the Graeffe iterates between the Landau l2 upper bound
/// and the binomial coefficient lower bound, all rounding outward.
MahlerResult mahler_measure(const IntPolynomial& p, const Rational& tol,
                            const MahlerOptions& opts = {});

/// Enclosure of M(P(x/2)) = |lead| * prod max(1/2, |root|), computed as
/// 2^-q M(2^q P(x/2)).
MahlerResult mahler_half(const IntPolynomial& p, const Rational& tol,
                         const MahlerOptions& opts = {});

/// Enclosure of M(2^-K P(2x)) = 2^-K M(P(2x)).
MahlerResult mahler_double(const IntPolynomial& p, const Rational& tol,
                           const MahlerOptions& opts = {});

struct NormReport {
    BigInt inf_norm;      // max |r_i|
    BigInt l2_norm_sq;    // sum r_i^2
    int degree = 0;
    BigInt binomial_mid;  // C(q, floor(q/2))
};

NormReport norm_report(const IntPolynomial& p);

BigInt binomial(unsigned n, unsigned k);

/// Instance checks of the coefficient/measure inequalities. Each check uses
/// the side of the certified enclosures that cannot report a spurious
/// violation; a failure therefore signals a genuine inconsistency.
struct CoefficientBoundsReport {
    bool coeff_binomial = false;   // |r_i| <= C(q,i) M(R), all i
    bool inf_norm_binomial = false;  // ||R||inf <= C(q,[q/2]) M(R)
    bool half_argument = false;    // M(R) <= 2^q M(R(x/2))
    MahlerResult measure;
    MahlerResult measure_half;
    bool all() const { return coeff_binomial && inf_norm_binomial && half_argument; }
};

CoefficientBoundsReport verify_coefficient_bounds(const IntPolynomial& p,
                                                  const Rational& tol = Rational(1, 1000000));

}  // namespace quantinv
