#include "qsl/rational.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <ostream>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* what) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw validation_error(std::string("rational overflow in ") + what);
    return static_cast<std::int64_t>(v);
}

i128 iabs(i128 v) { return v < 0 ? -v : v; }

// Reduce a 128-bit fraction and narrow to 64 bits.
Rational make(i128 num, i128 den, const char* what) {
    if (den == 0)
        throw validation_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = iabs(num), b = den;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    // Already normalized; the constructor's pass is a cheap no-op.
    return Rational(narrow(num, what), narrow(den, what));
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw validation_error("rational with zero denominator");
    if (den < 0) {
        if (num == INT64_MIN || den == INT64_MIN)
            throw validation_error("rational overflow in constructor");
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::parse(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    std::string_view body = text.substr(b, e - b);
    if (body.empty())
        throw validation_error("empty rational literal");

    auto parse_int = [](std::string_view s, const char* what) {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw validation_error(std::string("bad rational ") + what + ": '" +
                                   std::string(s) + "'");
        return value;
    };

    auto slash = body.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(body, "numerator"));
    std::int64_t num = parse_int(body.substr(0, slash), "numerator");
    std::int64_t den = parse_int(body.substr(slash + 1), "denominator");
    return Rational(num, den);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_, "addition");
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_, "multiplication");
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero())
        throw validation_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_, "division");
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
        s += '/';
        s += std::to_string(den_);
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

} // namespace qsl
