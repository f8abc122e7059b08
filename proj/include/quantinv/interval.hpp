#pragma once

#include <string>
#include <vector>

#include "quantinv/rational.hpp"

namespace quantinv {

/// Interval with exact rational endpoints and explicit closure flags. The
/// empty interval is a distinguished value. Endpoint closures decide every
/// boundary case exactly; no tolerances anywhere.
class Interval {
public:
    /// Default-constructed interval is empty.
    Interval() = default;

    Interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed);

    static Interval empty() { return Interval(); }
    static Interval point(const Rational& x) { return Interval(x, x, true, true); }
    static Interval open(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, false, false);
    }
    static Interval closed(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, true, true);
    }
    /// [lo, hi)
    static Interval half_open(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, true, false);
    }
    /// The quantizer cell [i, i+1).
    static Interval cell(const BigInt& i) {
        return half_open(Rational(i), Rational(BigInt(i + 1)));
    }

    bool is_empty() const { return empty_; }
    bool is_point() const { return !empty_ && lo_ == hi_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    bool lo_closed() const { return lo_closed_; }
    bool hi_closed() const { return hi_closed_; }

    Rational length() const { return empty_ ? Rational(0) : hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }

    bool contains(const Rational& x) const;
    bool contains(const Interval& other) const;
    bool intersects(const Interval& other) const;
    Interval intersect(const Interval& other) const;

    /// True when the two intervals cover a contiguous range (they intersect,
    /// or they abut with at least one touching endpoint closed).
    bool merges_with(const Interval& other) const;
    /// Hull of two merging intervals.
    Interval merge(const Interval& other) const;

    /// Exact image a*I + v for rational a; orientation flips when a < 0 and
    /// the image of a nonempty interval under a = 0 is the point {v}.
    Interval affine(const Rational& a, const Rational& v) const;

    /// Outer enclosure of a*I + v when a is only known inside a (closed)
    /// rational bracket. Sound superset of the exact image.
    Interval affine_enclosure(const Interval& a_bracket, const Rational& v) const;

    bool operator==(const Interval& o) const;

    std::string str() const;

private:
    Rational lo_, hi_;
    bool lo_closed_ = false, hi_closed_ = false;
    bool empty_ = true;
};

/// Sorted union of pairwise-disjoint, non-mergeable intervals.
class IntervalUnion {
public:
    IntervalUnion() = default;
    /// Sorts, merges overlapping/abutting-compatible parts.
    static IntervalUnion normalize(std::vector<Interval> parts);

    static IntervalUnion empty() { return IntervalUnion(); }
    static IntervalUnion single(const Interval& i) { return normalize({i}); }

    bool is_empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }
    size_t size() const { return parts_.size(); }
    Rational measure() const;

    bool contains(const Rational& x) const;
    IntervalUnion intersect(const Interval& window) const;
    IntervalUnion intersect(const IntervalUnion& other) const;
    IntervalUnion unite(const IntervalUnion& other) const;
    IntervalUnion affine(const Rational& a, const Rational& v) const;
    IntervalUnion affine_enclosure(const Interval& a_bracket, const Rational& v) const;

    bool operator==(const IntervalUnion& o) const { return parts_ == o.parts_; }

    std::string str() const;

private:
    std::vector<Interval> parts_;
};

}  // namespace quantinv
