#include "bernsum/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bernsum {

namespace {

bool integer_like(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + i, s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar Scalar::parse(const std::string& s) {
    if (s.find('/') != std::string::npos || integer_like(s)) return Scalar(Rational::parse(s));
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw SpecError("Scalar::parse: trailing junk in '" + s + "'");
        return Scalar::approx(v);
    } catch (const std::invalid_argument&) {
        throw SpecError("Scalar::parse: malformed number '" + s + "'");
    }
}

const Rational& Scalar::rat() const {
    if (!is_exact()) throw std::logic_error("Scalar::rat() on Approx value");
    return std::get<Rational>(v_);
}

bool Scalar::is_zero() const { return is_exact() ? rat().is_zero() : to_double() == 0.0; }

int Scalar::sign() const {
    if (is_exact()) return rat().sign();
    double d = to_double();
    return d < 0 ? -1 : d > 0 ? 1 : 0;
}

Scalar Scalar::operator-() const {
    return is_exact() ? Scalar(-rat()) : Scalar::approx(-to_double());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(a.rat() + b.rat());
    return Scalar::approx(a.to_double() + b.to_double());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(a.rat() - b.rat());
    return Scalar::approx(a.to_double() - b.to_double());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(a.rat() * b.rat());
    return Scalar::approx(a.to_double() * b.to_double());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(a.rat() / b.rat());
    if (b.to_double() == 0.0) throw SpecError("Scalar: division by zero");
    return Scalar::approx(a.to_double() / b.to_double());
}

Scalar Scalar::pow(long e) const {
    if (is_exact()) return Scalar(rat().pow(e));
    return Scalar::approx(std::pow(to_double(), static_cast<double>(e)));
}

Scalar Scalar::abs() const {
    return is_exact() ? Scalar(rat().abs()) : Scalar::approx(std::fabs(to_double()));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.rat() == b.rat();
    return a.to_double() == b.to_double();
}

std::string Scalar::str(int digits) const {
    if (is_exact()) return rat().str();
    digits = std::clamp(digits, 1, 17);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, to_double());
    return buf;
}

bool scalar_close(const Scalar& a, const Scalar& b, double rel_tol) {
    if (a.is_exact() && b.is_exact()) return a.rat() == b.rat();
    double x = a.to_double(), y = b.to_double();
    double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return std::fabs(x - y) <= rel_tol * scale;
}

}  // namespace bernsum
