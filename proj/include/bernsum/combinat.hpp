#pragma once

#include "bernsum/rational.hpp"
#include "bernsum/scalar.hpp"

namespace bernsum::combinat {

/// Number of surjections from a k-set onto an m-set,
/// S(k,m) = sum_{v=0}^{m-1} (-1)^v C(m,v) (m-v)^k.
/// Total: 0 for m > k, 1 at k = m = 0.
Integer surjections(long k, long m);

/// Stirling numbers of the second kind; S(k,m) = m! * S2(k,m).
Integer stirling2(long k, long m);

/// Signed Stirling numbers of the first kind:
/// [x]_k = sum_m S1(k,m) x^m.
Integer stirling1_signed(long k, long m);

/// Bell numbers, B_k = sum_{m=1}^k S2(k,m), B_0 = 1.
Integer bell(long k);

/// Binomial coefficient with the combinatorial zero-extension:
/// 0 whenever b < 0, b > a, or a < 0. Never the polynomial extension.
Integer binom(long a, long b);
Integer binom(const Integer& a, const Integer& b);

Integer factorial(long n);

/// Derangement counts D_n (permutations with no fixed point).
Integer derangements(long n);

/// Falling factorial [x]_k = x(x-1)...(x-k+1), [x]_0 = 1.
Integer falling(const Integer& x, long k);
Rational falling(const Rational& x, long k);
Scalar falling(const Scalar& x, long k);

/// Exact harmonic number H_r = sum_{i=1}^r 1/i.
Rational harmonic(long r);

/// Closed form of sum_{M=0}^r M*[M]_m:
/// (m+1)! C(r+1, r-m-1) + m * m! C(r+1, r-m).
Integer weighted_falling_sum(long m, long r);

}  // namespace bernsum::combinat
