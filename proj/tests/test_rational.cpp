#include <doctest.h>

#include <random>

#include "bernsum/scalar.hpp"

using namespace bernsum;

TEST_CASE("rational canonical form and printing") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(-1, 4).str() == "-1/4");
    CHECK(Rational(3, -6).str() == "-1/2");  // sign moves to the numerator
    CHECK(Rational(10, 2).str() == "5");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(6, 4).denominator() > 0);
    CHECK(Rational(6, 4).numerator() == 3);
}

TEST_CASE("rational parse round trips") {
    for (const char* s : {"3/2", "-1/4", "5", "0", "-7", "123456789123456789123/2"}) {
        CHECK(Rational::parse(s).str() == s);
    }
    CHECK(Rational::parse("4/8") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), SpecError);
    CHECK_THROWS_AS(Rational::parse("abc"), SpecError);
    CHECK_THROWS_AS(Rational::parse(""), SpecError);
}

TEST_CASE("rational arithmetic properties") {
    std::mt19937 gen(7);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    for (int i = 0; i < 300; ++i) {
        Rational a(num(gen), den(gen)), b(num(gen), den(gen));
        CHECK((a + b) - b == a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.reciprocal() == Rational(1));
        CHECK(Rational::parse(a.str()) == a);
    }
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(-2, 3).pow(2) == Rational(4, 9));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(0, 5).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), SpecError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), SpecError);
}

TEST_CASE("scalar exactness is sticky") {
    Scalar e = Scalar(Rational(1, 2));
    Scalar a = Scalar::approx(0.5);
    CHECK(e.is_exact());
    CHECK_FALSE(a.is_exact());
    CHECK((e + e).is_exact());
    CHECK_FALSE((e + a).is_exact());
    CHECK_FALSE((a * e).is_exact());
    CHECK((e * e).rat() == Rational(1, 4));
}

TEST_CASE("scalar parsing: rationals stay exact, decimals go approx") {
    CHECK(Scalar::parse("1/2").is_exact());
    CHECK(Scalar::parse("-3").is_exact());
    CHECK_FALSE(Scalar::parse("0.5").is_exact());
    CHECK_FALSE(Scalar::parse("1e-3").is_exact());
    CHECK(Scalar::parse("0.5").to_double() == 0.5);
    CHECK_THROWS_AS(Scalar::parse("zz"), SpecError);
}

TEST_CASE("scalar serialization") {
    CHECK(Scalar(Rational(3, 2)).str() == "3/2");
    CHECK(Scalar(5).str() == "5");
    // 17 significant digits round-trip doubles
    Scalar a = Scalar::approx(0.1234567890123456789);
    CHECK(std::stod(a.str()) == a.to_double());
    CHECK(Scalar::approx(0.25).str(3) == "0.25");
}
