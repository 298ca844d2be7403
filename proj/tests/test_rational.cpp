#include <doctest.h>

#include "qsl/rational.hpp"

#include "qsl/errors.hpp"
#include "support/generators.hpp"

using qsl::Rational;

TEST_CASE("rationals normalize on construction") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK(Rational(-4, 6) == Rational(-2, 3));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0, -5).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), qsl::validation_error);
}

TEST_CASE("parsing accepts integers and fractions") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse(" -7 ") == Rational(-7));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK_THROWS_AS(Rational::parse(""), qsl::validation_error);
    CHECK_THROWS_AS(Rational::parse("1/x"), qsl::validation_error);
    CHECK_THROWS_AS(Rational::parse("1.5"), qsl::validation_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), qsl::validation_error);
}

TEST_CASE("to_string round trips") {
    for (const char* text : {"0", "7", "-7", "3/2", "-11/13"})
        CHECK(Rational::parse(text).to_string() == text);
}

TEST_CASE("exact comparisons") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1000000007, 2) > Rational(1000000006, 2));
}

TEST_CASE("field identities on random values") {
    qsl::testgen::Rng rng(20240811);
    for (int i = 0; i < 500; ++i) {
        auto draw = [&] {
            std::int64_t num = static_cast<std::int64_t>(rng.below(2001)) - 1000;
            std::int64_t den = static_cast<std::int64_t>(rng.below(50)) + 1;
            return Rational(num, den);
        };
        Rational a = draw(), b = draw(), c = draw();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero())
            CHECK(a / b * b == a);
    }
}

TEST_CASE("overflow is detected, not wrapped") {
    Rational huge(INT64_MAX, 1);
    CHECK_THROWS_AS(huge + Rational(1), qsl::validation_error);
    CHECK_THROWS_AS(huge * Rational(2), qsl::validation_error);
    // Reduction may keep a large product representable.
    CHECK(Rational(INT64_MAX, 2) * Rational(2) == huge);
}
