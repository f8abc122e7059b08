#pragma once

#include <optional>
#include <vector>

#include "quantinv/int_polynomial.hpp"
#include "quantinv/interval.hpp"

namespace quantinv {

/// Sturm chain of the squarefree part of p (content-normalized
/// pseudo-remainders, signs preserved).
std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p);

/// Sign variations of the chain evaluated at x.
int sign_variations_at(const std::vector<IntPolynomial>& chain, const Rational& x);

/// Number of distinct real roots of the squarefree polynomial behind the
/// chain in the open interval (a, b); both endpoints must be non-roots.
int count_roots(const std::vector<IntPolynomial>& chain, const Rational& a, const Rational& b);

/// Number of distinct real roots of p inside the interval (closure-aware).
int count_roots_in(const IntPolynomial& p, const Interval& iv);

/// Disjoint rational intervals, each containing exactly one real root of p,
/// jointly covering all real roots. Exact rational roots come back as point
/// intervals; the rest are open sign-change intervals of width <= max_width.
std::vector<Interval> isolate_real_roots(const IntPolynomial& p,
                                         const Rational& max_width = Rational(1, 4));

/// Halves a sign-change bracket around a single simple root until its width
/// is <= width. Endpoints never land on the root.
Interval refine_sign_change_interval(const IntPolynomial& p, Interval iv, const Rational& width);

/// The rational with smallest denominator in the closed interval [lo, hi]
/// (ties broken toward smaller numerator magnitude).
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

/// Exact rational root of p inside the isolating interval, if one exists.
/// The interval must contain exactly one real root of p.
std::optional<Rational> rational_root_in(const IntPolynomial& p, const Interval& iv);

/// True iff p (degree >= 2 assumed squarefree) has some rational root.
bool has_rational_root(const IntPolynomial& p);

}  // namespace quantinv
