#include "bernsum/genfun.hpp"

#include <cmath>

#include "bernsum/combinat.hpp"
#include "bernsum/errors.hpp"

namespace bernsum::genfun {

using combinat::binom;
using combinat::factorial;
using combinat::stirling2;
using combinat::surjections;

std::string to_string(SeriesKind k) {
    switch (k) {
        case SeriesKind::Mgf: return "mgf";
        case SeriesKind::Fmgf: return "fmgf";
        case SeriesKind::Pgf: return "pgf";
    }
    return "?";
}

SeriesKind series_kind_from_string(const std::string& s) {
    if (s == "mgf") return SeriesKind::Mgf;
    if (s == "fmgf") return SeriesKind::Fmgf;
    if (s == "pgf") return SeriesKind::Pgf;
    throw SpecError("unknown series kind '" + s + "'");
}

nlohmann::json SeriesPoly::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : coeffs) arr.push_back(c.str());
    return {{"kind", to_string(kind)}, {"order", order()}, {"coeffs", arr}};
}

namespace {

SeriesPoly scaled_series(std::span<const Scalar> values, int K, SeriesKind kind, const char* what) {
    if (K < 0) throw SpecError(std::string(what) + ": negative order");
    if (static_cast<int>(values.size()) < K + 1)
        throw SpecError(std::string(what) + ": need values 0..K");
    if (!(values[0] == Scalar(1)))
        throw SpecError(std::string(what) + ": values[0] must be 1");
    SeriesPoly s;
    s.kind = kind;
    s.coeffs.reserve(K + 1);
    for (int k = 0; k <= K; ++k) s.coeffs.push_back(values[k] / Scalar(factorial(k)));
    return s;
}

}  // namespace

SeriesPoly mgf_series(std::span<const Scalar> moments, int K) {
    return scaled_series(moments, K, SeriesKind::Mgf, "mgf_series");
}

SeriesPoly fmgf_series(std::span<const Scalar> factorials, int K) {
    return scaled_series(factorials, K, SeriesKind::Fmgf, "fmgf_series");
}

SeriesPoly pgf_from_fmgf(const SeriesPoly& h, bool exact_degree) {
    if (h.kind != SeriesKind::Fmgf) throw SpecError("pgf_from_fmgf: input must be an fmgf");
    if (!exact_degree)
        throw TruncationUnsound(
            "pgf_from_fmgf: shifting a truncated series is unsound; supply the full-degree fmgf");
    const int K = h.order();
    SeriesPoly g;
    g.kind = SeriesKind::Pgf;
    g.coeffs.assign(K + 1, Scalar(0));
    // coefficient of s^j in sum_k c_k (s-1)^k
    for (int j = 0; j <= K; ++j) {
        Scalar cj(0);
        for (int k = j; k <= K; ++k) {
            Scalar term = Scalar(binom(k, j)) * h.coeffs[k];
            cj += ((k - j) % 2 == 0) ? term : -term;
        }
        g.coeffs[j] = cj;
    }
    return g;
}

Scalar pmf_from_factorial_moments(std::span<const Scalar> factorials, long x, int jmax,
                                  bool finite_support) {
    if (x < 0) return Scalar(0);
    if (jmax < 0 || static_cast<int>(factorials.size()) < jmax + 1)
        throw SpecError("pmf_from_factorial_moments: need factorial moments 0..jmax");
    Scalar total(0);
    Scalar last_term(0);
    for (long j = x; j <= jmax; ++j) {
        Scalar term = Scalar(Rational(binom(j, x), factorial(j))) * factorials[j];
        last_term = term;
        total += ((j - x) % 2 == 0) ? term : -term;
    }
    if (!finite_support) {
        // without the vanishing-moments guarantee the alternating sum is
        // only trustworthy if its tail terms have died off
        double tail_mag = last_term.abs().to_double();
        if (x > jmax || tail_mag > 1e-12 * (std::fabs(total.to_double()) + 1.0))
            throw AlternatingSeriesUnstable(
                "pmf_from_factorial_moments: trailing term does not certify convergence at jmax=" +
                std::to_string(jmax));
    }
    return total;
}

Scalar poisson_limit_gap(long n, const Scalar& lambda, int k) {
    if (n < 1) throw SpecError("poisson_limit_gap: n < 1");
    if (k < 0) throw SpecError("poisson_limit_gap: k < 0");
    if (lambda.to_double() > static_cast<double>(n))
        throw SpecError("poisson_limit_gap: need lambda <= n");
    const Scalar p = lambda / Scalar(Rational(n));
    Scalar binom_moment = k == 0 ? Scalar(1) : Scalar(0);
    Scalar poisson_moment = binom_moment;
    for (int m = 1; m <= k; ++m) {
        if (m <= n) binom_moment += Scalar(surjections(k, m) * binom(n, m)) * p.pow(m);
        poisson_moment += Scalar(stirling2(k, m)) * lambda.pow(m);
    }
    return (binom_moment - poisson_moment).abs();
}

}  // namespace bernsum::genfun
