#ifndef QSL_RATIONAL_HPP
#define QSL_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qsl {

/// Exact rational number over 64-bit integers. Always normalized:
/// denominator > 0, gcd(|num|, den) == 1, zero is 0/1. Arithmetic goes
/// through 128-bit intermediates and throws validation_error when a
/// result does not fit back into 64 bits.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t num, std::int64_t den);

    // Accepts "p", "-p", "p/q" with optional surrounding whitespace.
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational abs() const;

    friend Rational operator+(const Rational&, const Rational&);
    friend Rational operator-(const Rational&, const Rational&);
    friend Rational operator*(const Rational&, const Rational&);
    friend Rational operator/(const Rational&, const Rational&);

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational&, const Rational&);

    // "p" when integral, "p/q" otherwise.
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream&, const Rational&);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace qsl

#endif
