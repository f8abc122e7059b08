#pragma once

#include <optional>
#include <string>
#include <variant>

#include "quantinv/int_polynomial.hpp"
#include "quantinv/interval.hpp"

namespace quantinv {

inline constexpr unsigned kDefaultEnclosureBits = 64;

/// Real algebraic number represented by a primitive integer minimal
/// polynomial (positive leading coefficient) plus an isolating interval
/// designating one real root. Refinement nests: the designated root never
/// changes. Construction goes through make_algebraic, which screens content,
/// squarefreeness and rational roots; irreducibility itself is asserted by
/// the caller.
class AlgebraicNumber {
public:
    const IntPolynomial& min_poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    const Interval& isolating_interval() const { return isolating_; }

    /// Exact value when degree is 1.
    std::optional<Rational> rational_value() const;

    /// Outward enclosure with relative width <= 2^-bits (exact point for
    /// degree 1). Refinements are cached and nested.
    Interval enclosure(unsigned bits = kDefaultEnclosureBits) const;

    /// Sign of (value - r): -1, 0, +1. Zero only occurs in degree 1.
    int cmp(const Rational& r) const;
    /// Sign of (|value| - r).
    int abs_cmp(const Rational& r) const;
    int sign() const;

    double approx() const;
    std::string str() const;

    bool operator==(const AlgebraicNumber& o) const;

private:
    friend AlgebraicNumber make_algebraic(const IntPolynomial& p, const Interval& hint);
    AlgebraicNumber(IntPolynomial p, Interval isolating)
        : poly_(std::move(p)), isolating_(std::move(isolating)), enclosure_(isolating_) {}

    void refine_once() const;

    IntPolynomial poly_;
    Interval isolating_;
    mutable Interval enclosure_;
};

/// Builds an AlgebraicNumber after validating: p primitive with positive
/// leading coefficient, squarefree, no rational roots when degree > 1, and
/// hint isolating exactly one real root. Degree-1 polynomials are accepted
/// and behave as their exact rational root.
AlgebraicNumber make_algebraic(const IntPolynomial& p, const Interval& hint);

/// Dynamics coefficient: exact rational or algebraic real.
using ExactReal = std::variant<Rational, AlgebraicNumber>;

bool is_rational(const ExactReal& a);
const Rational& as_rational(const ExactReal& a);
int sign_of(const ExactReal& a);
/// Sign of (a - r).
int cmp(const ExactReal& a, const Rational& r);
/// Sign of (|a| - r).
int abs_cmp(const ExactReal& a, const Rational& r);
/// Point interval for rationals, cached refinement otherwise.
Interval enclosure_of(const ExactReal& a, unsigned bits = kDefaultEnclosureBits);
/// Minimal polynomial: qx - p for rationals.
IntPolynomial min_poly_of(const ExactReal& a);
double approx_of(const ExactReal& a);
std::string str_of(const ExactReal& a);

/// Enclosure-refinement budget in bits; QUANTINV_PRECISION_BITS overrides
/// the default of 256.
unsigned precision_budget_bits();

/// a*I + v: exact for rational a (closures preserved, orientation flipped
/// when a < 0), certified outward enclosure for algebraic a.
Interval interval_affine_image(const Interval& I, const ExactReal& a, const Rational& v,
                               unsigned bits = kDefaultEnclosureBits);

}  // namespace quantinv
