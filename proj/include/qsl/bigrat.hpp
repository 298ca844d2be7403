#ifndef QSL_BIGRAT_HPP
#define QSL_BIGRAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "qsl/rational.hpp"

namespace qsl {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational used by the sequence model's certification
/// arithmetic, where scaled square-root bounds overflow 64-bit fractions.
struct BigRat {
    BigInt num = 0;
    BigInt den = 1;

    BigRat() = default;
    BigRat(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    BigRat(const Rational& r) : num(r.num()), den(r.den()) {}
    static BigRat from_int(long v) { return BigRat(BigInt(v), BigInt(1)); }

    void normalize() {
        if (den == 0)
            throw validation_error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num), den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    BigRat abs() const { return num < 0 ? BigRat(-num, den) : *this; }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        return BigRat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        return BigRat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const BigRat& a, const BigRat& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const BigRat& a, const BigRat& b) {
        return a.num * b.den <= b.num * a.den;
    }

    std::string to_string() const {
        std::string s = num.str();
        if (den != 1)
            s += "/" + den.str();
        return s;
    }
};

/// Floor of sqrt(v); v must be nonnegative.
inline BigInt isqrt(const BigInt& v) { return boost::multiprecision::sqrt(v); }

/// Exact three-way comparison of the rational a against b*sqrt(d), d > 1
/// and not a perfect square.
inline int cmp_linear_sqrt(const BigRat& a, const BigRat& b, std::int64_t d) {
    // Clear denominators: compare a.num * b.den  vs  b.num * a.den * sqrt(d).
    BigInt lhs = a.num * b.den;
    BigInt rhs_coeff = b.num * a.den;
    bool lneg = lhs < 0, rneg = rhs_coeff < 0;
    if (lhs == 0 && rhs_coeff == 0)
        return 0;
    if (lneg != rneg || (lhs == 0) || (rhs_coeff == 0)) {
        // Differing signs (sqrt(d) > 0 keeps the coefficient's sign).
        int ls = lhs == 0 ? 0 : (lneg ? -1 : 1);
        int rs = rhs_coeff == 0 ? 0 : (rneg ? -1 : 1);
        return ls < rs ? -1 : 1;
    }
    BigInt l2 = lhs * lhs;
    BigInt r2 = rhs_coeff * rhs_coeff * d;
    int mag = l2 == r2 ? 0 : (l2 < r2 ? -1 : 1);
    return lneg ? -mag : mag;
}

/// Certified enclosure of sqrt(d) with denominator 10^9.
inline std::pair<BigRat, BigRat> sqrt_interval(std::int64_t d) {
    const BigInt scale = BigInt(1000000000);
    BigInt lo = isqrt(BigInt(d) * scale * scale);
    return {BigRat(lo, scale), BigRat(lo + 1, scale)};
}

} // namespace qsl

#endif
