#include "quantinv/rational.hpp"

#include <cmath>

namespace quantinv {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(s));
        }
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw DivisionByZero("rational literal with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal: " + s);
    }
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw ParseError("non-finite double cannot become a rational");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return Rational(BigInt(q.get_num()), BigInt(q.get_den()));
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace quantinv
