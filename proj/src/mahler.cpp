#include "quantinv/mahler.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "quantinv/errors.hpp"

namespace quantinv {

namespace {

void widen_exponent_range() {
    static const bool done = [] {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        return true;
    }();
    (void)done;
}

/// Directed-rounded scalar interval [lo, hi] on MPFR numbers. Only what the
/// Graeffe iteration needs.
class DirectedInterval {
public:
    explicit DirectedInterval(mpfr_prec_t prec) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    DirectedInterval(const DirectedInterval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    DirectedInterval& operator=(const DirectedInterval& o) {
        if (this != &o) {
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~DirectedInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    void set_exact_int(const BigInt& z) {
        mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
    }

    void add(const DirectedInterval& o) {
        mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    }
    void sub(const DirectedInterval& o) {
        mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    }

    static DirectedInterval mul(const DirectedInterval& a, const DirectedInterval& b,
                                mpfr_prec_t prec) {
        DirectedInterval r(prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        bool first = true;
        const mpfr_srcptr as[2] = {a.lo_, a.hi_};
        const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
        for (auto x : as)
            for (auto y : bs) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return r;
    }

    /// Certified lower bound of |value| (0 when the interval straddles 0).
    void abs_lower(mpfr_t out) const {
        if (mpfr_sgn(lo_) > 0) mpfr_set(out, lo_, MPFR_RNDD);
        else if (mpfr_sgn(hi_) < 0) mpfr_neg(out, hi_, MPFR_RNDD);
        else mpfr_set_zero(out, 1);
    }
    /// Certified upper bound of |value|.
    void abs_upper(mpfr_t out) const {
        mpfr_t t;
        mpfr_init2(t, mpfr_get_prec(out));
        mpfr_abs(out, lo_, MPFR_RNDU);
        mpfr_abs(t, hi_, MPFR_RNDU);
        if (mpfr_cmp(t, out) > 0) mpfr_set(out, t, MPFR_RNDU);
        mpfr_clear(t);
    }

    bool finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

private:
    mpfr_t lo_, hi_;
};

/// Exact rational equal to the MPFR value (every finite MPFR number is
/// m * 2^e).
Rational rational_from_mpfr(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    BigInt m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    if (e >= 0) return Rational(m * (BigInt(1) << static_cast<unsigned long>(e)));
    return Rational(m, BigInt(1) << static_cast<unsigned long>(-e));
}

/// Rational upper bound of sqrt(s) for integer s >= 0.
Rational isqrt_upper(const BigInt& s) {
    BigInt root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), s.get_mpz_t());
    if (rem != 0) root += 1;
    return Rational(root);
}

/// 2^n-th root with directed rounding, certified by a one-ulp nudge.
Rational root_pow2_down(const Rational& v, int n, mpfr_prec_t prec) {
    if (v.sign() <= 0) return Rational(0);
    mpfr_t x;
    mpfr_init2(x, prec);
    mpfr_set_q(x, v.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_rootn_ui(x, x, 1UL << n, MPFR_RNDD);
    mpfr_nextbelow(x);
    Rational r = rational_from_mpfr(x);
    mpfr_clear(x);
    return r.sign() > 0 ? r : Rational(0);
}

Rational root_pow2_up(const Rational& v, int n, mpfr_prec_t prec) {
    mpfr_t x;
    mpfr_init2(x, prec);
    mpfr_set_q(x, v.raw().get_mpq_t(), MPFR_RNDU);
    mpfr_rootn_ui(x, x, 1UL << n, MPFR_RNDU);
    mpfr_nextabove(x);
    Rational r = rational_from_mpfr(x);
    mpfr_clear(x);
    return r;
}

struct Bracket {
    Rational lower, upper;
    bool tight_enough(const Rational& tol) const {
        return upper.sign() > 0 && (upper - lower) <= tol * upper;
    }
    void meet(const Rational& lo, const Rational& up) {
        if (lo > lower) lower = lo;
        if (up < upper) upper = up;
    }
};

std::vector<BigInt> binomial_row(int q) {
    std::vector<BigInt> row(static_cast<size_t>(q) + 1);
    for (int i = 0; i <= q; ++i)
        mpz_bin_uiui(row[static_cast<size_t>(i)].get_mpz_t(), static_cast<unsigned>(q),
                     static_cast<unsigned>(i));
    return row;
}

/// max_i |r_i| / C(q,i) over exact integer coefficients.
Rational coeff_lower_exact(const IntPolynomial& r, const std::vector<BigInt>& binom) {
    Rational best(0);
    for (int i = 0; i <= r.degree(); ++i) {
        Rational cand(abs(r.coeff(i)), binom[static_cast<size_t>(i)]);
        if (cand > best) best = cand;
    }
    return best;
}

Rational l2_upper_exact(const IntPolynomial& r) {
    BigInt s(0);
    for (const auto& c : r.coefficients()) s += c * c;
    return isqrt_upper(s);
}

unsigned max_coeff_bits(const IntPolynomial& r) {
    size_t bits = 0;
    for (const auto& c : r.coefficients())
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return static_cast<unsigned>(bits);
}

/// Graeffe step on interval coefficients (same convolution as the integer
/// version).
std::vector<DirectedInterval> graeffe_directed(const std::vector<DirectedInterval>& c,
                                               mpfr_prec_t prec) {
    const int q = static_cast<int>(c.size()) - 1;
    std::vector<DirectedInterval> g;
    g.reserve(c.size());
    for (int k = 0; k <= q; ++k) {
        DirectedInterval acc(prec);
        const int lo = std::max(0, 2 * k - q);
        const int hi = std::min(q, 2 * k);
        for (int j = lo; j <= hi; ++j) {
            DirectedInterval term =
                DirectedInterval::mul(c[static_cast<size_t>(j)], c[static_cast<size_t>(2 * k - j)], prec);
            if (j & 1) acc.sub(term);
            else acc.add(term);
        }
        if (q & 1) {
            DirectedInterval neg(prec);
            neg.sub(acc);
            g.push_back(neg);
        } else {
            g.push_back(acc);
        }
    }
    return g;
}

/// Bracket of M(P) = M(iterate)^(1/2^n) from the step-n interval
/// coefficients: lower from the binomial inequality, upper from the l2 norm.
/// The 2^n-th root is taken before leaving MPFR; the unrooted values carry
/// exponents ~2^n and must never be materialized as exact rationals.
bool directed_bracket_rooted(const std::vector<DirectedInterval>& c,
                             const std::vector<BigInt>& binom, mpfr_prec_t prec, int n,
                             Rational* lower, Rational* upper) {
    mpfr_t t, best, sum;
    mpfr_init2(t, prec);
    mpfr_init2(best, prec);
    mpfr_init2(sum, prec);
    mpfr_set_zero(best, 1);
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i].finite()) {
            mpfr_clears(t, best, sum, nullptr);
            return false;
        }
        c[i].abs_lower(t);
        mpfr_div_z(t, t, binom[i].get_mpz_t(), MPFR_RNDD);
        if (mpfr_cmp(t, best) > 0) mpfr_set(best, t, MPFR_RNDD);
    }
    if (mpfr_sgn(best) > 0) {
        mpfr_rootn_ui(best, best, 1UL << n, MPFR_RNDD);
        mpfr_nextbelow(best);
        if (mpfr_sgn(best) < 0) mpfr_set_zero(best, 1);
    }
    *lower = rational_from_mpfr(best);

    mpfr_set_zero(sum, 1);
    for (const auto& ci : c) {
        ci.abs_upper(t);
        mpfr_sqr(t, t, MPFR_RNDU);
        mpfr_add(sum, sum, t, MPFR_RNDU);
    }
    mpfr_sqrt(sum, sum, MPFR_RNDU);
    mpfr_rootn_ui(sum, sum, 1UL << n, MPFR_RNDU);
    mpfr_nextabove(sum);
    *upper = rational_from_mpfr(sum);
    mpfr_clears(t, best, sum, nullptr);
    return true;
}

}  // namespace

BigInt binomial(unsigned n, unsigned k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

NormReport norm_report(const IntPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("norm report of zero polynomial");
    NormReport rep;
    rep.degree = p.degree();
    rep.inf_norm = 0;
    rep.l2_norm_sq = 0;
    for (const auto& c : p.coefficients()) {
        BigInt a = abs(c);
        if (a > rep.inf_norm) rep.inf_norm = a;
        rep.l2_norm_sq += c * c;
    }
    rep.binomial_mid = binomial(static_cast<unsigned>(rep.degree),
                                static_cast<unsigned>(rep.degree / 2));
    return rep;
}

MahlerResult mahler_measure(const IntPolynomial& p, const Rational& tol,
                            const MahlerOptions& opts) {
    if (p.is_zero()) throw ZeroPolynomial("Mahler measure of zero polynomial");
    if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
    widen_exponent_range();

    // Roots at zero contribute max(1,0) = 1: drop them.
    auto [core, zeros] = p.strip_zero_roots();
    (void)zeros;
    const int q = core.degree();
    if (q == 0) {
        const Rational v(abs(core.coeff(0)));
        return MahlerResult{v, v, 0};
    }

    const double tol_d = std::max(tol.approx(), 1e-18);
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(
        std::max<double>(opts.min_precision_bits, -std::log2(tol_d) + 96));
    const auto binom = binomial_row(q);

    // Static bounds: M >= |r_0|, |r_q|, max_i |r_i|/C(q,i); M <= l2 norm.
    Bracket best{max(max(Rational(abs(core.coeff(0))), Rational(abs(core.leading()))),
                     coeff_lower_exact(core, binom)),
                 l2_upper_exact(core)};
    if (best.tight_enough(tol)) return MahlerResult{best.lower, best.upper, 0};

    IntPolynomial iterate = core;
    std::vector<DirectedInterval> directed;
    bool exact_phase = true;
    for (int n = 1; n <= opts.max_steps; ++n) {
        Rational lo_root, up_root;
        if (exact_phase) {
            iterate = iterate.graeffe_step();
            lo_root = root_pow2_down(coeff_lower_exact(iterate, binom), n, prec);
            up_root = root_pow2_up(l2_upper_exact(iterate), n, prec);
            if (max_coeff_bits(iterate) > opts.cutover_bits) {
                directed.assign(iterate.coefficients().size(), DirectedInterval(prec));
                for (size_t i = 0; i < iterate.coefficients().size(); ++i)
                    directed[i].set_exact_int(iterate.coefficients()[i]);
                exact_phase = false;
            }
        } else {
            directed = graeffe_directed(directed, prec);
            if (!directed_bracket_rooted(directed, binom, prec, n, &lo_root, &up_root))
                throw NonConvergence("Graeffe iterate left the representable range");
        }
        best.meet(lo_root, up_root);
        if (best.tight_enough(tol)) return MahlerResult{best.lower, best.upper, n};
    }
    throw NonConvergence("Mahler bracket did not reach tolerance " + tol.str() + " within " +
                         std::to_string(opts.max_steps) + " Graeffe steps");
}

namespace {

/// M(R) for rational R via M(d R) = |d| M(R) with d clearing denominators.
MahlerResult measure_of_rational_poly(const RationalPolynomial& rp, const Rational& tol,
                                      const MahlerOptions& opts) {
    auto [cleared, den] = rp.clear_denominators();
    MahlerResult m = mahler_measure(cleared, tol, opts);
    const Rational scale(BigInt(1), den);
    return MahlerResult{m.lower * scale, m.upper * scale, m.iterations};
}

}  // namespace

MahlerResult mahler_half(const IntPolynomial& p, const Rational& tol, const MahlerOptions& opts) {
    if (p.is_zero()) throw ZeroPolynomial("Mahler measure of zero polynomial");
    return measure_of_rational_poly(RationalPolynomial::half_argument(p), tol, opts);
}

MahlerResult mahler_double(const IntPolynomial& p, const Rational& tol, const MahlerOptions& opts) {
    if (p.is_zero()) throw ZeroPolynomial("Mahler measure of zero polynomial");
    return measure_of_rational_poly(RationalPolynomial::double_argument_scaled(p), tol, opts);
}

CoefficientBoundsReport verify_coefficient_bounds(const IntPolynomial& p, const Rational& tol) {
    if (p.is_zero()) throw ZeroPolynomial("coefficient bounds of zero polynomial");
    CoefficientBoundsReport rep;
    rep.measure = mahler_measure(p, tol);
    rep.measure_half = mahler_half(p, tol);
    const int q = p.degree();
    const auto binom = binomial_row(q);

    rep.coeff_binomial = true;
    for (int i = 0; i <= q; ++i) {
        if (Rational(abs(p.coeff(i))) > Rational(binom[static_cast<size_t>(i)]) * rep.measure.upper) {
            rep.coeff_binomial = false;
            break;
        }
    }
    const NormReport norms = norm_report(p);
    rep.inf_norm_binomial =
        Rational(norms.inf_norm) <= Rational(norms.binomial_mid) * rep.measure.upper;
    const Rational two_q(BigInt(1) << static_cast<unsigned>(q));
    rep.half_argument = rep.measure.lower <= two_q * rep.measure_half.upper;
    return rep;
}

}  // namespace quantinv
