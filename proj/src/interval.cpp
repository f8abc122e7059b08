#include "quantinv/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quantinv {

Interval::Interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed) {
    if (lo_ > hi_) {
        empty_ = true;
    } else if (lo_ == hi_) {
        empty_ = !(lo_closed_ && hi_closed_);
    } else {
        empty_ = false;
    }
    if (empty_) {
        lo_ = hi_ = Rational(0);
        lo_closed_ = hi_closed_ = false;
    }
}

bool Interval::contains(const Rational& x) const {
    if (empty_) return false;
    if (x < lo_ || x > hi_) return false;
    if (x == lo_ && !lo_closed_) return false;
    if (x == hi_ && !hi_closed_) return false;
    return true;
}

bool Interval::contains(const Interval& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    bool lo_ok = lo_ < other.lo_ || (lo_ == other.lo_ && (lo_closed_ || !other.lo_closed_));
    bool hi_ok = hi_ > other.hi_ || (hi_ == other.hi_ && (hi_closed_ || !other.hi_closed_));
    return lo_ok && hi_ok;
}

Interval Interval::intersect(const Interval& other) const {
    if (empty_ || other.empty_) return empty();
    Rational lo = lo_;
    bool lc = lo_closed_;
    if (other.lo_ > lo || (other.lo_ == lo && !other.lo_closed_)) {
        lo = other.lo_;
        lc = (other.lo_ == lo_) ? (lo_closed_ && other.lo_closed_) : other.lo_closed_;
    }
    Rational hi = hi_;
    bool hc = hi_closed_;
    if (other.hi_ < hi || (other.hi_ == hi && !other.hi_closed_)) {
        hi = other.hi_;
        hc = (other.hi_ == hi_) ? (hi_closed_ && other.hi_closed_) : other.hi_closed_;
    }
    return Interval(lo, hi, lc, hc);
}

bool Interval::intersects(const Interval& other) const { return !intersect(other).is_empty(); }

bool Interval::merges_with(const Interval& other) const {
    if (empty_ || other.empty_) return true;
    if (intersects(other)) return true;
    if (hi_ == other.lo_ && (hi_closed_ || other.lo_closed_)) return true;
    if (other.hi_ == lo_ && (other.hi_closed_ || lo_closed_)) return true;
    return false;
}

Interval Interval::merge(const Interval& other) const {
    if (empty_) return other;
    if (other.empty_) return *this;
    Rational lo = lo_;
    bool lc = lo_closed_;
    if (other.lo_ < lo || (other.lo_ == lo && other.lo_closed_)) {
        lc = (other.lo_ == lo) ? (lc || other.lo_closed_) : other.lo_closed_;
        lo = other.lo_;
    }
    Rational hi = hi_;
    bool hc = hi_closed_;
    if (other.hi_ > hi || (other.hi_ == hi && other.hi_closed_)) {
        hc = (other.hi_ == hi) ? (hc || other.hi_closed_) : other.hi_closed_;
        hi = other.hi_;
    }
    return Interval(lo, hi, lc, hc);
}

Interval Interval::affine(const Rational& a, const Rational& v) const {
    if (empty_) return empty();
    const int s = a.sign();
    if (s == 0) return point(v);
    if (s > 0) return Interval(a * lo_ + v, a * hi_ + v, lo_closed_, hi_closed_);
    return Interval(a * hi_ + v, a * lo_ + v, hi_closed_, lo_closed_);
}

Interval Interval::affine_enclosure(const Interval& a_bracket, const Rational& v) const {
    if (empty_) return empty();
    if (a_bracket.is_empty()) throw std::invalid_argument("empty multiplier bracket");
    if (a_bracket.is_point()) return affine(a_bracket.lo(), v);
    const Rational cands[4] = {a_bracket.lo() * lo_, a_bracket.lo() * hi_,
                               a_bracket.hi() * lo_, a_bracket.hi() * hi_};
    Rational mn = cands[0], mx = cands[0];
    for (int i = 1; i < 4; ++i) {
        if (cands[i] < mn) mn = cands[i];
        if (cands[i] > mx) mx = cands[i];
    }
    // Closure flags follow the exact image when the bracket is sign-definite;
    // a straddling bracket falls back to a closed hull.
    bool lc = true, hc = true;
    if (a_bracket.lo().sign() > 0) {
        lc = lo_closed_;
        hc = hi_closed_;
    } else if (a_bracket.hi().sign() < 0) {
        lc = hi_closed_;
        hc = lo_closed_;
    }
    return Interval(mn + v, mx + v, lc, hc);
}

bool Interval::operator==(const Interval& o) const {
    if (empty_ && o.empty_) return true;
    if (empty_ != o.empty_) return false;
    return lo_ == o.lo_ && hi_ == o.hi_ && lo_closed_ == o.lo_closed_ && hi_closed_ == o.hi_closed_;
}

std::string Interval::str() const {
    if (empty_) return "{}";
    std::ostringstream os;
    os << (lo_closed_ ? "[" : "(") << lo_.str() << "," << hi_.str() << (hi_closed_ ? "]" : ")");
    return os.str();
}

IntervalUnion IntervalUnion::normalize(std::vector<Interval> parts) {
    std::vector<Interval> live;
    live.reserve(parts.size());
    for (auto& p : parts)
        if (!p.is_empty()) live.push_back(std::move(p));
    std::sort(live.begin(), live.end(), [](const Interval& a, const Interval& b) {
        if (a.lo() != b.lo()) return a.lo() < b.lo();
        if (a.lo_closed() != b.lo_closed()) return a.lo_closed();
        return a.hi() < b.hi();
    });
    IntervalUnion u;
    for (auto& p : live) {
        if (!u.parts_.empty() && u.parts_.back().merges_with(p)) {
            u.parts_.back() = u.parts_.back().merge(p);
        } else {
            u.parts_.push_back(std::move(p));
        }
    }
    return u;
}

Rational IntervalUnion::measure() const {
    Rational m(0);
    for (const auto& p : parts_) m += p.length();
    return m;
}

bool IntervalUnion::contains(const Rational& x) const {
    for (const auto& p : parts_)
        if (p.contains(x)) return true;
    return false;
}

IntervalUnion IntervalUnion::intersect(const Interval& window) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.intersect(window));
    return normalize(std::move(out));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
    std::vector<Interval> out;
    for (const auto& p : parts_)
        for (const auto& q : other.parts_) out.push_back(p.intersect(q));
    return normalize(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
    std::vector<Interval> out(parts_);
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return normalize(std::move(out));
}

IntervalUnion IntervalUnion::affine(const Rational& a, const Rational& v) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.affine(a, v));
    return normalize(std::move(out));
}

IntervalUnion IntervalUnion::affine_enclosure(const Interval& a_bracket, const Rational& v) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back(p.affine_enclosure(a_bracket, v));
    return normalize(std::move(out));
}

std::string IntervalUnion::str() const {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << " ";
        os << parts_[i].str();
    }
    os << "}";
    return os.str();
}

}  // namespace quantinv
