#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "quantinv/rational.hpp"

namespace quantinv {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree. The zero polynomial has an empty coefficient
/// vector and degree -1. Content (gcd of coefficients) is computed on
/// construction.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(const BigInt& c);
    /// qx - p, the minimal polynomial of p/q (den positive, reduced).
    static IntPolynomial linear_from_rational(const Rational& a);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return coeffs_; }
    BigInt coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return BigInt(0);
        return coeffs_[static_cast<size_t>(i)];
    }
    BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }
    const BigInt& content() const { return content_; }
    bool is_primitive() const { return content_ == 1; }

    Rational eval(const Rational& x) const;
    BigInt eval(const BigInt& x) const;
    int sign_at(const Rational& x) const { return eval(x).sign(); }

    IntPolynomial derivative() const;
    IntPolynomial operator-() const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial scaled(const BigInt& c) const;

    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

    /// Divides all coefficients by the content (leading sign preserved).
    IntPolynomial primitive_part() const;
    /// Primitive part with positive leading coefficient.
    IntPolynomial normalized_primitive() const;

    /// P / D for exact divisors; throws std::logic_error when the division
    /// leaves a remainder.
    IntPolynomial divide_exact(const IntPolynomial& d) const;

    /// Primitive gcd (positive leading coefficient) via pseudo-remainders.
    static IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

    /// Pseudo-remainder of a by b scaled by a positive constant, so its sign
    /// matches the rational Euclidean remainder (what Sturm chains need).
    static IntPolynomial signed_pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

    /// P with repeated roots stripped: pp(P)/gcd(P, P').
    IntPolynomial squarefree_part() const;
    bool is_squarefree() const;

    /// One root-squaring step: result has roots rho^2 and leading coefficient
    /// lc(P)^2, so its Mahler measure is M(P)^2.
    IntPolynomial graeffe_step() const;

    /// P(2x): integer coefficients r_i 2^i.
    IntPolynomial stretch2() const;
    /// 2^deg P(x/2): integer coefficients r_i 2^(deg-i).
    IntPolynomial compress2() const;

    /// Strips a factor x^m (roots at zero), returning the cofactor and m.
    std::pair<IntPolynomial, int> strip_zero_roots() const;

    /// 1 + max_i |a_i| / |a_deg|; all real roots lie strictly inside (-B, B).
    Rational cauchy_root_bound() const;

    std::string str() const;

private:
    void normalize();
    std::vector<BigInt> coeffs_;
    BigInt content_ = 0;
};

/// Polynomial with rational coefficients, ascending degree; used for the
/// halved/doubled-variable scalings before clearing denominators.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coeffs);
    explicit RationalPolynomial(const IntPolynomial& p);

    /// P(x/2) with rational coefficients.
    static RationalPolynomial half_argument(const IntPolynomial& p);
    /// 2^(-deg) P(2x) with rational coefficients.
    static RationalPolynomial double_argument_scaled(const IntPolynomial& p);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational eval(const Rational& x) const;

    /// Smallest positive d with d*P integer; returns (d*P, d).
    std::pair<IntPolynomial, BigInt> clear_denominators() const;

private:
    std::vector<Rational> coeffs_;
};

}  // namespace quantinv
