#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bernsum/distributions.hpp"

namespace bernsum::oracle {

/// Ground-truth moments from an independent code path (no surjection or
/// Stirling machinery anywhere below), so agreement with the engine and
/// the closed forms is evidence rather than tautology.
struct OracleResult {
    std::vector<Scalar> raw;        // k = 0..kmax
    std::vector<Scalar> central;    // empty for monte carlo
    std::vector<Scalar> factorial;  // empty for monte carlo
    std::string method;             // "enumeration" | "pmf_sum" | "monte_carlo"
    std::optional<long> sample_count;
    std::vector<double> stderr_raw;  // monte carlo only, per k
    std::string rng;                 // generator id, monte carlo only

    const std::vector<Scalar>& of(MomentKind kind) const;
};

/// All 2^n outcomes of independent Bernoulli(p_i); n <= 20.
OracleResult enumerate_independent(const std::vector<Scalar>& p, int kmax);

/// Fixed-point counts over all n! permutations; n <= 8.
OracleResult enumerate_matching(int n, int kmax);

/// Empty-urn counts over all equiprobable placements of `balls`
/// indistinguishable balls into n urns; C(balls+n-1, balls) <= 1e6.
OracleResult enumerate_urns(int n, long balls, int kmax);

/// Trait counts over all equally likely n-subsets of an N-population.
OracleResult enumerate_hypergeometric(int N, int g, int n, int kmax);

/// Direct sum_x x^k pmf(x) over a finite support.
OracleResult pmf_moments(const Dist& dist, int kmax);

/// Sample raw moments with standard errors; deterministic per
/// (seed, samples) on one build. Generator: mt19937_64.
OracleResult monte_carlo(const Dist& dist, int kmax, long samples, std::uint64_t seed);

}  // namespace bernsum::oracle
