#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "bernsum/errors.hpp"

namespace bernsum {

// Arbitrary-precision signed integer.
using Integer = mpz_class;

/// Exact fraction over arbitrary-precision integers.
///
/// Always stored in lowest terms with a positive denominator; every
/// operation is exact. Serializes as "num/den" ("3/2", "-1/4") or just
/// the numerator when the value is integral ("5").
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}          // NOLINT: implicit by design
    Rational(const Integer& n) : q_(n) {}  // NOLINT
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw SpecError("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "a/b" or a plain integer string.
    static Rational parse(const std::string& s);

    Integer numerator() const { return q_.get_num(); }
    Integer denominator() const { return q_.get_den(); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw SpecError("Rational: division by zero");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    // x^e with 0^0 = 1; negative exponents require x != 0.
    Rational pow(long e) const;

    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational reciprocal() const { return Rational(1) / *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    mpq_class q_;  // canonical at all times
};

}  // namespace bernsum
