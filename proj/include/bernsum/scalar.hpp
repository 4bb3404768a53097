#pragma once

#include <string>
#include <variant>

#include "bernsum/rational.hpp"

namespace bernsum {

/// Tagged exact-or-approximate number.
///
/// Exact holds a Rational, Approx a double. Exact and Approx never mix
/// silently: any operation touching an Approx operand yields an Approx
/// result, so approximateness is sticky and visible via is_exact().
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(long n) : v_(Rational(n)) {}        // NOLINT: implicit by design
    Scalar(Rational r) : v_(std::move(r)) {}   // NOLINT
    Scalar(const Integer& n) : v_(Rational(n)) {}  // NOLINT

    static Scalar approx(double v) { return Scalar(v, approx_tag{}); }
    static Scalar exact(Rational r) { return Scalar(std::move(r)); }

    // "a/b" and integer strings stay exact; anything else (decimal,
    // scientific) parses as a double and forces the Approx path.
    static Scalar parse(const std::string& s);

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const;
    double to_double() const {
        return is_exact() ? std::get<Rational>(v_).to_double() : std::get<double>(v_);
    }
    bool is_zero() const;
    int sign() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar pow(long e) const;
    Scalar abs() const;

    // Exact==Exact compares rationals; otherwise compares doubles.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Exact values render as "num/den"; Approx as a decimal with
    /// `digits` significant digits (default 17, round-trip safe).
    std::string str(int digits = 17) const;

  private:
    struct approx_tag {};
    Scalar(double v, approx_tag) : v_(v) {}
    std::variant<Rational, double> v_;
};

/// |a-b| <= tol * max(1, |a|, |b|); exact pairs compare exactly.
bool scalar_close(const Scalar& a, const Scalar& b, double rel_tol);

}  // namespace bernsum
