#include "quantinv/root_isolation.hpp"

#include <algorithm>
#include <stdexcept>

#include "quantinv/errors.hpp"

namespace quantinv {

std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("sturm chain of zero polynomial");
    std::vector<IntPolynomial> chain;
    IntPolynomial a = p.squarefree_part();
    chain.push_back(a);
    if (a.degree() == 0) return chain;
    IntPolynomial b = a.derivative().primitive_part();
    chain.push_back(b);
    while (chain.back().degree() > 0) {
        const IntPolynomial& s0 = chain[chain.size() - 2];
        const IntPolynomial& s1 = chain.back();
        IntPolynomial r = -IntPolynomial::signed_pseudo_remainder(s0, s1);
        if (r.is_zero()) break;
        // Content division keeps coefficients small; it is a positive factor.
        chain.push_back(r.primitive_part());
    }
    return chain;
}

int sign_variations_at(const std::vector<IntPolynomial>& chain, const Rational& x) {
    int vars = 0;
    int prev = 0;
    for (const auto& s : chain) {
        const int sg = s.sign_at(x);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++vars;
        prev = sg;
    }
    return vars;
}

namespace {

/// Roots of the chain's squarefree polynomial in the half-open interval
/// (a, b]. Valid for arbitrary endpoints (V is right-continuous at roots).
int count_half_open(const std::vector<IntPolynomial>& chain, const Rational& a,
                    const Rational& b) {
    if (a >= b) return 0;
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

}  // namespace

int count_roots(const std::vector<IntPolynomial>& chain, const Rational& a, const Rational& b) {
    if (chain.empty()) throw std::logic_error("empty sturm chain");
    if (chain.front().sign_at(a) == 0 || chain.front().sign_at(b) == 0)
        throw std::logic_error("count_roots endpoints must not be roots");
    return count_half_open(chain, a, b);
}

int count_roots_in(const IntPolynomial& p, const Interval& iv) {
    if (p.is_zero()) throw ZeroPolynomial("root count of zero polynomial");
    if (iv.is_empty()) return 0;
    IntPolynomial sf = p.squarefree_part();
    if (sf.degree() == 0) return 0;
    if (iv.is_point()) return sf.sign_at(iv.lo()) == 0 ? 1 : 0;
    auto chain = sturm_chain(p);
    int n = count_half_open(chain, iv.lo(), iv.hi());
    if (sf.sign_at(iv.hi()) == 0 && !iv.hi_closed()) --n;
    if (sf.sign_at(iv.lo()) == 0 && iv.lo_closed()) ++n;
    return n;
}

Interval refine_sign_change_interval(const IntPolynomial& p, Interval iv, const Rational& width) {
    if (iv.is_point()) return iv;
    int slo = p.sign_at(iv.lo());
    int shi = p.sign_at(iv.hi());
    if (slo == 0 || shi == 0 || slo == shi)
        throw std::logic_error("refine_sign_change_interval needs a sign-change bracket");
    Rational lo = iv.lo(), hi = iv.hi();
    while (hi - lo > width) {
        Rational m = (lo + hi) / Rational(2);
        int sm = p.sign_at(m);
        if (sm == 0) return Interval::point(m);
        if (sm == slo) lo = m;
        else hi = m;
    }
    return Interval::open(lo, hi);
}

namespace {

struct Isolator {
    const IntPolynomial& sf;
    const std::vector<IntPolynomial>& chain;
    Rational max_width;
    std::vector<Interval> out;

    void emit_single(const Rational& a, const Rational& b) {
        // Exactly one simple root in (a,b) and nonzero endpoints: sign change.
        Interval iv = refine_sign_change_interval(sf, Interval::open(a, b), max_width);
        out.push_back(iv);
    }

    void isolate(const Rational& a, const Rational& b) {
        const int n = count_roots(chain, a, b);
        if (n == 0) return;
        if (n == 1) {
            emit_single(a, b);
            return;
        }
        Rational m = (a + b) / Rational(2);
        if (sf.sign_at(m) != 0) {
            isolate(a, m);
            isolate(m, b);
            return;
        }
        // Midpoint is an exact root: carve out a punctured neighbourhood.
        out.push_back(Interval::point(m));
        Rational w = (b - a) / Rational(4);
        while (true) {
            const Rational l = m - w, r = m + w;
            if (sf.sign_at(l) != 0 && sf.sign_at(r) != 0 &&
                count_roots(chain, l, r) == 1) {
                isolate(a, l);
                isolate(r, b);
                return;
            }
            w /= Rational(2);
        }
    }
};

}  // namespace

std::vector<Interval> isolate_real_roots(const IntPolynomial& p, const Rational& max_width) {
    if (p.is_zero()) throw ZeroPolynomial("cannot isolate roots of zero polynomial");
    IntPolynomial sf = p.squarefree_part();
    if (sf.degree() == 0) return {};
    auto chain = sturm_chain(p);
    Rational bound = sf.cauchy_root_bound();
    Isolator iso{sf, chain, max_width, {}};
    iso.isolate(-bound, bound);
    std::sort(iso.out.begin(), iso.out.end(),
              [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
    return iso.out;
}

Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_in: lo > hi");
    if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
    if (hi.sign() < 0) return -simplest_rational_in(-hi, -lo);
    // 0 < lo <= hi. If an integer fits, it has denominator 1.
    BigInt c = lo.ceil();
    if (Rational(c) <= hi) return Rational(c);
    BigInt f = lo.floor();
    // lo,hi in (f, f+1): recurse on reciprocals of the fractional parts.
    Rational sub = simplest_rational_in((hi - Rational(f)).reciprocal(),
                                        (lo - Rational(f)).reciprocal());
    return Rational(f) + sub.reciprocal();
}

std::optional<Rational> rational_root_in(const IntPolynomial& p, const Interval& iv) {
    if (p.is_zero()) throw ZeroPolynomial("rational root of zero polynomial");
    IntPolynomial sf = p.squarefree_part();
    if (iv.is_point())
        return sf.sign_at(iv.lo()) == 0 ? std::optional<Rational>(iv.lo()) : std::nullopt;
    if (iv.lo_closed() && sf.sign_at(iv.lo()) == 0) return iv.lo();
    if (iv.hi_closed() && sf.sign_at(iv.hi()) == 0) return iv.hi();
    if (sf.sign_at(iv.lo()) == 0 || sf.sign_at(iv.hi()) == 0) return std::nullopt;
    // Any rational root has denominator dividing the leading coefficient.
    // Shrink the bracket below 1/D^2 so at most one such rational fits, then
    // probe the simplest rational in the bracket.
    const BigInt d = abs(sf.leading());
    const Rational target = Rational(BigInt(1), d * d + 1);
    Interval narrow = refine_sign_change_interval(sf, iv, target);
    if (narrow.is_point()) return narrow.lo();
    Rational s = simplest_rational_in(narrow.lo(), narrow.hi());
    if (s.denominator() <= d && sf.sign_at(s) == 0 && narrow.contains(s)) return s;
    return std::nullopt;
}

bool has_rational_root(const IntPolynomial& p) {
    IntPolynomial sf = p.squarefree_part();
    if (sf.degree() == 0) return false;
    for (const auto& iv : isolate_real_roots(sf))
        if (rational_root_in(sf, iv)) return true;
    return false;
}

}  // namespace quantinv
