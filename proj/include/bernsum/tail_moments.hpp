#pragma once

#include <functional>
#include <optional>

#include "bernsum/distributions.hpp"
#include "bernsum/scalar.hpp"

namespace bernsum::tail {

/// Geometric decay certificate: tail(M) <= C * q^M for all M >= from.
struct DecayBound {
    double C = 1.0;
    double q = 0.5;  // in (0,1)
    long from = 1;
};

/// A count random variable on {0,1,2,...} described by its upper tail
/// Pr(N >= M) for M >= 1.
///
/// The tail function must be non-increasing with values in [0,1]; this
/// is checked eagerly over finite supports and lazily as infinite series
/// are consumed. An optional exact channel lets a tail be supplied as
/// scale * tailFn(M) with tailFn exact rational and the (possibly
/// irrational) scale applied once after summation, so series of exact
/// tails stay exact until the final conversion.
class CountDist {
  public:
    using TailFn = std::function<Scalar(long)>;

    static CountDist finite(TailFn tail, long max_m);
    static CountDist infinite(TailFn tail, DecayBound bound);
    static CountDist infinite_scaled(TailFn raw_tail, double scale, DecayBound bound);

    /// True tail Pr(N >= M) (scale already applied).
    Scalar tail(long M) const;
    /// Raw channel value (exact for scaled distributions).
    Scalar raw_tail(long M) const;

    bool finite_support() const { return max_m_.has_value(); }
    long max_m() const { return *max_m_; }
    const DecayBound& bound() const { return bound_; }
    double scale() const { return scale_; }
    bool scaled() const { return scale_ != 1.0; }

  private:
    CountDist() = default;
    TailFn tail_;
    std::optional<long> max_m_;
    DecayBound bound_;
    double scale_ = 1.0;
};

/// Value plus, for truncated infinite series, a bound on the dropped
/// residual and the index where summation stopped.
struct TailValue {
    Scalar value;
    std::optional<double> residual_bound;
    long last_term = 0;
};

inline constexpr double kDefaultTailEpsilon = 1e-15;

/// E(N^k) = sum_m S(k,m) sum_{M>=m} C(M-1,m-1) Pr(N >= M).
TailValue moment_from_tail(const CountDist& d, int k, double epsilon = kDefaultTailEpsilon);

/// E([N]_k) = k! sum_{M>=k} C(M-1,k-1) Pr(N >= M).
TailValue factorial_moment_from_tail(const CountDist& d, int k, double epsilon = kDefaultTailEpsilon);

/// Cross-check route: E(N^k) = sum_{i>=0} ((i+1)^k - i^k) Pr(N > i).
TailValue moment_chakra(const CountDist& d, int k, double epsilon = kDefaultTailEpsilon);

/// Tail via suffix sums of a pmf over support 0..max_m (exact when the
/// pmf is exact). Throws NotNormalized unless the pmf sums to 1
/// (exactly, or within 1e-9 on the Approx path).
CountDist tail_from_pmf(const std::function<Scalar(long)>& pmf, long max_m);

/// Bridge from a distribution: finite supports go through their tail
/// directly; geometric and poisson get certified infinite tails
/// (poisson via the exact-rational channel scaled by exp(-lambda)).
CountDist count_dist_from(DistPtr dist);

}  // namespace bernsum::tail
