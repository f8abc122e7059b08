#include "quantinv/int_polynomial.hpp"

#include <sstream>

#include "quantinv/errors.hpp"

namespace quantinv {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    normalize();
}

void IntPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    content_ = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(content_.get_mpz_t(), content_.get_mpz_t(), c.get_mpz_t());
        if (content_ == 1) break;
    }
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
    std::vector<BigInt> v;
    if (c != 0) v.push_back(c);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear_from_rational(const Rational& a) {
    return IntPolynomial(std::vector<BigInt>{-a.numerator(), a.denominator()});
}

Rational IntPolynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + Rational(*it);
    return acc;
}

BigInt IntPolynomial::eval(const BigInt& x) const {
    BigInt acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() < 1) return zero();
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<BigInt> c(coeffs_);
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> c(std::max(coeffs_.size(), o.coeffs_.size()), BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<BigInt> c(coeffs_.size() + o.coeffs_.size() - 1, BigInt(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::scaled(const BigInt& k) const {
    std::vector<BigInt> c(coeffs_);
    for (auto& x : c) x *= k;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return zero();
    std::vector<BigInt> c(coeffs_);
    for (auto& x : c) x /= content_;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::normalized_primitive() const {
    IntPolynomial p = primitive_part();
    if (!p.is_zero() && p.leading() < 0) p = -p;
    return p;
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero polynomial");
    if (is_zero()) return zero();
    if (degree() < d.degree()) throw std::logic_error("divide_exact: divisor degree too large");
    // Long division over Q, then an integrality check.
    std::vector<Rational> rem(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) rem[i] = Rational(coeffs_[i]);
    const Rational dl = Rational(d.leading());
    const int dd = d.degree();
    std::vector<Rational> quot(static_cast<size_t>(degree() - dd) + 1, Rational(0));
    for (int k = degree() - dd; k >= 0; --k) {
        Rational q = rem[static_cast<size_t>(k + dd)] / dl;
        quot[static_cast<size_t>(k)] = q;
        if (q.is_zero()) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(k + j)] -= q * Rational(d.coeff(j));
    }
    for (const auto& r : rem)
        if (!r.is_zero()) throw std::logic_error("divide_exact: nonzero remainder");
    std::vector<BigInt> out(quot.size());
    for (size_t i = 0; i < quot.size(); ++i) {
        if (!quot[i].is_integer()) throw std::logic_error("divide_exact: fractional quotient");
        out[i] = quot[i].numerator();
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::signed_pseudo_remainder(const IntPolynomial& a,
                                                     const IntPolynomial& b) {
    IntPolynomial r = a;
    const int db = b.degree();
    BigInt lb = b.leading();
    BigInt abs_lb = ::abs(lb);
    while (!r.is_zero() && r.degree() >= db) {
        // r <- |lb|*r - sign(lb)*top*x^shift*b; scaling stays positive so the
        // remainder keeps the sign of the rational Euclidean remainder.
        BigInt top = r.leading();
        std::vector<BigInt> c(r.coefficients());
        for (auto& x : c) x *= abs_lb;
        BigInt factor = top;
        if (lb < 0) factor = -factor;
        const int shift = r.degree() - db;
        for (int j = 0; j <= db; ++j) c[static_cast<size_t>(j + shift)] -= factor * b.coeff(j);
        r = IntPolynomial(std::move(c));
    }
    return r;
}

IntPolynomial IntPolynomial::gcd(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial x = a.normalized_primitive();
    IntPolynomial y = b.normalized_primitive();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPolynomial r = signed_pseudo_remainder(x, y).normalized_primitive();
        x = y;
        y = r;
        if (!y.is_zero() && x.degree() < y.degree()) std::swap(x, y);
    }
    return x.normalized_primitive();
}

IntPolynomial IntPolynomial::squarefree_part() const {
    if (is_zero()) throw ZeroPolynomial("squarefree part of zero polynomial");
    if (degree() == 0) return normalized_primitive();
    IntPolynomial g = gcd(*this, derivative());
    if (g.degree() == 0) return normalized_primitive();
    return normalized_primitive().divide_exact(g).normalized_primitive();
}

bool IntPolynomial::is_squarefree() const {
    if (is_zero()) return false;
    if (degree() <= 1) return true;
    return gcd(*this, derivative()).degree() == 0;
}

IntPolynomial IntPolynomial::graeffe_step() const {
    if (is_zero()) throw ZeroPolynomial("graeffe step on zero polynomial");
    const int q = degree();
    std::vector<BigInt> g(static_cast<size_t>(q) + 1, BigInt(0));
    for (int k = 0; k <= q; ++k) {
        BigInt acc(0);
        const int lo = std::max(0, 2 * k - q);
        for (int j = lo; j <= std::min(q, 2 * k); ++j) {
            BigInt term = coeff(j) * coeff(2 * k - j);
            if (j & 1) acc -= term;
            else acc += term;
        }
        if (q & 1) acc = -acc;
        g[static_cast<size_t>(k)] = acc;
    }
    return IntPolynomial(std::move(g));
}

IntPolynomial IntPolynomial::stretch2() const {
    std::vector<BigInt> c(coeffs_);
    BigInt p(1);
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] *= p;
        p *= 2;
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::compress2() const {
    std::vector<BigInt> c(coeffs_);
    BigInt p(1);
    for (size_t i = c.size(); i-- > 0;) {
        c[i] *= p;
        p *= 2;
    }
    return IntPolynomial(std::move(c));
}

std::pair<IntPolynomial, int> IntPolynomial::strip_zero_roots() const {
    if (is_zero()) return {zero(), 0};
    size_t m = 0;
    while (m < coeffs_.size() && coeffs_[m] == 0) ++m;
    std::vector<BigInt> c(coeffs_.begin() + static_cast<long>(m), coeffs_.end());
    return {IntPolynomial(std::move(c)), static_cast<int>(m)};
}

Rational IntPolynomial::cauchy_root_bound() const {
    if (is_zero()) throw ZeroPolynomial("root bound of zero polynomial");
    BigInt num(0);
    for (size_t i = 0; i + 1 < coeffs_.size(); ++i) {
        BigInt a = ::abs(coeffs_[i]);
        if (a > num) num = a;
    }
    return Rational(1) + Rational(num, ::abs(leading()));
}

std::string IntPolynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ",";
        os << coeffs_[i].get_str();
    }
    os << "]";
    return os.str();
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RationalPolynomial::RationalPolynomial(const IntPolynomial& p) {
    coeffs_.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) coeffs_.emplace_back(c);
}

RationalPolynomial RationalPolynomial::half_argument(const IntPolynomial& p) {
    std::vector<Rational> c;
    c.reserve(p.coefficients().size());
    Rational w(1);
    const Rational half(1, 2);
    for (const auto& a : p.coefficients()) {
        c.push_back(Rational(a) * w);
        w *= half;
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::double_argument_scaled(const IntPolynomial& p) {
    const int q = p.degree();
    std::vector<Rational> c;
    c.reserve(p.coefficients().size());
    Rational scale = Rational(BigInt(1), BigInt(1) << std::max(q, 0));
    Rational w(1);
    for (const auto& a : p.coefficients()) {
        c.push_back(Rational(a) * w * scale);
        w *= Rational(2);
    }
    return RationalPolynomial(std::move(c));
}

Rational RationalPolynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::pair<IntPolynomial, BigInt> RationalPolynomial::clear_denominators() const {
    BigInt l(1);
    for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<BigInt> out(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        Rational v = coeffs_[i] * Rational(l);
        out[i] = v.numerator();
    }
    return {IntPolynomial(std::move(out)), l};
}

}  // namespace quantinv
