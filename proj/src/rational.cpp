#include "bernsum/rational.hpp"

#include <ostream>

namespace bernsum {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw SpecError("Rational::parse: empty string");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw SpecError("Rational::parse: zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw SpecError("Rational::parse: malformed rational '" + s + "'");
    }
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), n);
    mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), n);
    Rational out{std::move(r)};
    if (invert) {
        if (out.is_zero()) throw SpecError("Rational::pow: negative power of zero");
        out = out.reciprocal();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace bernsum
