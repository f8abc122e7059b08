#include "quantinv/algebraic.hpp"

#include <cstdlib>

#include "quantinv/errors.hpp"
#include "quantinv/root_isolation.hpp"

namespace quantinv {

std::optional<Rational> AlgebraicNumber::rational_value() const {
    if (degree() != 1) return std::nullopt;
    return Rational(-poly_.coeff(0), poly_.coeff(1));
}

void AlgebraicNumber::refine_once() const {
    if (enclosure_.is_point()) return;
    const Rational m = enclosure_.midpoint();
    const int sm = poly_.sign_at(m);
    if (sm == 0) {
        enclosure_ = Interval::point(m);
        return;
    }
    const int slo = poly_.sign_at(enclosure_.lo());
    if (sm == slo) enclosure_ = Interval::open(m, enclosure_.hi());
    else enclosure_ = Interval::open(enclosure_.lo(), m);
}

Interval AlgebraicNumber::enclosure(unsigned bits) const {
    if (auto r = rational_value()) return Interval::point(*r);
    const Rational eps(BigInt(1), BigInt(1) << bits);
    while (true) {
        if (enclosure_.is_point()) return enclosure_;
        Rational scale = max(max(enclosure_.lo().abs(), enclosure_.hi().abs()), Rational(1));
        if (enclosure_.length() <= eps * scale) return enclosure_;
        refine_once();
    }
}

int AlgebraicNumber::cmp(const Rational& r) const {
    if (auto v = rational_value()) return *v < r ? -1 : (*v == r ? 0 : 1);
    // r is never the root here (degree > 1 has no rational roots), so
    // bisection eventually separates them.
    while (true) {
        if (r <= enclosure_.lo()) return 1;
        if (r >= enclosure_.hi()) return -1;
        refine_once();
    }
}

int AlgebraicNumber::abs_cmp(const Rational& r) const {
    if (sign() >= 0) return cmp(r);
    return -cmp(-r);
}

int AlgebraicNumber::sign() const { return cmp(Rational(0)); }

double AlgebraicNumber::approx() const { return enclosure(60).midpoint().approx(); }

std::string AlgebraicNumber::str() const {
    return "root of " + poly_.str() + " in " + isolating_.str();
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
    if (!(poly_ == o.poly_)) return false;
    // Same minimal polynomial: equal iff the isolating intervals pin the same
    // root, i.e. they overlap.
    return isolating_.intersects(o.isolating_);
}

AlgebraicNumber make_algebraic(const IntPolynomial& p, const Interval& hint) {
    if (p.is_zero()) throw ZeroPolynomial("algebraic number needs a nonzero polynomial");
    if (p.degree() < 1) throw std::invalid_argument("algebraic number needs degree >= 1");
    if (!p.is_primitive()) throw NotPrimitive("polynomial content is " + p.content().get_str());
    if (p.leading() < 0)
        throw NotPrimitive("leading coefficient must be positive");
    if (!p.is_squarefree()) throw NotSquarefree("polynomial has repeated roots");
    if (p.degree() > 1 && has_rational_root(p))
        throw ReducibleByRationalRoot("polynomial has a rational root; supply a as a rational");
    if (hint.is_empty()) throw NoRootInInterval("empty isolating interval");

    const int n = count_roots_in(p, hint);
    if (n == 0) throw NoRootInInterval("no root of " + p.str() + " in " + hint.str());
    if (n > 1) throw MultipleRootsInInterval(std::to_string(n) + " roots in " + hint.str());

    if (p.degree() == 1) {
        const Rational r(-p.coeff(0), p.coeff(1));
        return AlgebraicNumber(p, Interval::point(r));
    }
    // Endpoints are rational hence not roots (no rational roots survive the
    // screen), so one simple root inside means a sign change.
    Interval bracket = Interval::open(hint.lo(), hint.hi());
    if (p.sign_at(bracket.lo()) == p.sign_at(bracket.hi()))
        throw MultipleRootsInInterval("endpoints do not bracket the root");
    return AlgebraicNumber(p, bracket);
}

bool is_rational(const ExactReal& a) { return std::holds_alternative<Rational>(a); }

const Rational& as_rational(const ExactReal& a) { return std::get<Rational>(a); }

int sign_of(const ExactReal& a) {
    if (is_rational(a)) return as_rational(a).sign();
    return std::get<AlgebraicNumber>(a).sign();
}

int cmp(const ExactReal& a, const Rational& r) {
    if (is_rational(a)) {
        const Rational& v = as_rational(a);
        return v < r ? -1 : (v == r ? 0 : 1);
    }
    return std::get<AlgebraicNumber>(a).cmp(r);
}

int abs_cmp(const ExactReal& a, const Rational& r) {
    if (is_rational(a)) {
        const Rational v = as_rational(a).abs();
        return v < r ? -1 : (v == r ? 0 : 1);
    }
    return std::get<AlgebraicNumber>(a).abs_cmp(r);
}

Interval enclosure_of(const ExactReal& a, unsigned bits) {
    if (is_rational(a)) return Interval::point(as_rational(a));
    return std::get<AlgebraicNumber>(a).enclosure(bits);
}

IntPolynomial min_poly_of(const ExactReal& a) {
    if (is_rational(a)) return IntPolynomial::linear_from_rational(as_rational(a));
    return std::get<AlgebraicNumber>(a).min_poly();
}

double approx_of(const ExactReal& a) {
    if (is_rational(a)) return as_rational(a).approx();
    return std::get<AlgebraicNumber>(a).approx();
}

std::string str_of(const ExactReal& a) {
    if (is_rational(a)) return as_rational(a).str();
    return std::get<AlgebraicNumber>(a).str();
}

Interval interval_affine_image(const Interval& I, const ExactReal& a, const Rational& v,
                               unsigned bits) {
    if (is_rational(a)) return I.affine(as_rational(a), v);
    return I.affine_enclosure(enclosure_of(a, bits), v);
}

unsigned precision_budget_bits() {
    if (const char* env = std::getenv("QUANTINV_PRECISION_BITS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 16 && v <= 1 << 20) return static_cast<unsigned>(v);
    }
    return 256;
}

}  // namespace quantinv
