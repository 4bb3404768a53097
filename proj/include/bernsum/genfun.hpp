#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernsum/scalar.hpp"

namespace bernsum::genfun {

enum class SeriesKind { Mgf, Fmgf, Pgf };

std::string to_string(SeriesKind k);
SeriesKind series_kind_from_string(const std::string& s);

/// Truncated power-series coefficient vector c_0..c_K.
struct SeriesPoly {
    SeriesKind kind = SeriesKind::Mgf;
    std::vector<Scalar> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    nlohmann::json to_json() const;  // {"kind":"pgf","order":3,"coeffs":["1/3",...]}
};

/// M_X(s) truncation: c_k = E(X^k)/k!.
SeriesPoly mgf_series(std::span<const Scalar> moments, int K);

/// H_X(s) truncation: c_k = E([X]_k)/k!.
SeriesPoly fmgf_series(std::span<const Scalar> factorials, int K);

/// G_X(s) = H_X(s-1) by polynomial shift. Requires exact_degree: the
/// shift of a truncated series is not a truncation of the shifted
/// series, so a merely-truncated FMGF is refused (TruncationUnsound).
SeriesPoly pgf_from_fmgf(const SeriesPoly& h, bool exact_degree);

/// Pr(X = x) = sum_{j=x}^{jmax} (-1)^{x+j} C(j,x) E([X]_j)/j!.
/// Exact when E([X]_j) = 0 beyond jmax (finite support with jmax at the
/// support size); set finite_support=false to evaluate a genuinely
/// truncated list, which throws AlternatingSeriesUnstable unless the
/// trailing terms certify convergence.
Scalar pmf_from_factorial_moments(std::span<const Scalar> factorials, long x, int jmax,
                                  bool finite_support = true);

/// Exact gap |E(Binomial(n, lambda/n)^k) - E(Poisson(lambda)^k)|.
Scalar poisson_limit_gap(long n, const Scalar& lambda, int k);

}  // namespace bernsum::genfun
