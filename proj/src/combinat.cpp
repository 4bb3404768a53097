#include "bernsum/combinat.hpp"

#include <mutex>
#include <vector>

namespace bernsum::combinat {

namespace {

// Triangular tables grown on demand. Guarded by one mutex each; rows are
// appended, never mutated, so cached lookups just copy values out.
struct TriangleCache {
    std::mutex mu;
    std::vector<std::vector<Integer>> rows;
};

Integer cached_triangle(TriangleCache& cache, long k, long m,
                        Integer (*step)(const std::vector<Integer>& prev, long k, long m)) {
    std::scoped_lock lock(cache.mu);
    if (cache.rows.empty()) cache.rows.push_back({Integer(1)});  // row k=0: [1]
    while (static_cast<long>(cache.rows.size()) <= k) {
        const auto& prev = cache.rows.back();
        long kk = static_cast<long>(cache.rows.size());
        std::vector<Integer> row(kk + 1);
        for (long mm = 0; mm <= kk; ++mm) row[mm] = step(prev, kk, mm);
        cache.rows.push_back(std::move(row));
    }
    return cache.rows[k][m];
}

Integer stirling2_step(const std::vector<Integer>& prev, long k, long m) {
    if (m == 0) return Integer(0);
    Integer v = (m <= k - 1) ? Integer(m) * prev[m] : Integer(0);
    if (m - 1 <= k - 1) v += prev[m - 1];
    return v;
}

Integer stirling1_step(const std::vector<Integer>& prev, long k, long m) {
    // s(k,m) = s(k-1,m-1) - (k-1) * s(k-1,m)
    Integer v = (m >= 1 && m - 1 <= k - 1) ? prev[m - 1] : Integer(0);
    if (m <= k - 1) v -= Integer(k - 1) * prev[m];
    return v;
}

}  // namespace

Integer surjections(long k, long m) {
    if (k < 0 || m < 0) throw SpecError("surjections: negative argument");
    if (m == 0) return k == 0 ? 1 : 0;
    if (m > k) return 0;
    Integer total = 0;
    for (long v = 0; v < m; ++v) {
        Integer term = binom(m, v);
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m - v), static_cast<unsigned long>(k));
        term *= p;
        if (v % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

Integer stirling2(long k, long m) {
    if (k < 0 || m < 0) throw SpecError("stirling2: negative argument");
    if (m > k) return 0;
    static TriangleCache cache;
    return cached_triangle(cache, k, m, stirling2_step);
}

Integer stirling1_signed(long k, long m) {
    if (k < 0 || m < 0 || m > k) throw SpecError("stirling1_signed: need 0 <= m <= k");
    static TriangleCache cache;
    return cached_triangle(cache, k, m, stirling1_step);
}

Integer bell(long k) {
    if (k < 0) throw SpecError("bell: negative argument");
    Integer total = k == 0 ? 1 : 0;
    for (long m = 1; m <= k; ++m) total += stirling2(k, m);
    return total;
}

Integer binom(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

Integer binom(const Integer& a, const Integer& b) {
    if (sgn(b) < 0 || sgn(a) < 0 || b > a) return 0;
    if (!a.fits_ulong_p()) throw SpecError("binom: top index too large");
    Integer r;
    mpz_bin_ui(r.get_mpz_t(), a.get_mpz_t(), b.get_ui());
    return r;
}

Integer factorial(long n) {
    if (n < 0) throw SpecError("factorial: negative argument");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer derangements(long n) {
    if (n < 0) throw SpecError("derangements: negative argument");
    // D_n = (n-1)(D_{n-1} + D_{n-2}), D_0 = 1, D_1 = 0
    Integer prev2 = 1, prev1 = 0;
    if (n == 0) return prev2;
    for (long i = 2; i <= n; ++i) {
        Integer cur = Integer(i - 1) * (prev1 + prev2);
        prev2 = std::move(prev1);
        prev1 = std::move(cur);
    }
    return prev1;
}

Integer falling(const Integer& x, long k) {
    if (k < 0) throw SpecError("falling: negative order");
    Integer r = 1;
    for (long j = 0; j < k; ++j) r *= x - j;
    return r;
}

Rational falling(const Rational& x, long k) {
    if (k < 0) throw SpecError("falling: negative order");
    Rational r = 1;
    for (long j = 0; j < k; ++j) r *= x - Rational(j);
    return r;
}

Scalar falling(const Scalar& x, long k) {
    if (x.is_exact()) return Scalar(falling(x.rat(), k));
    if (k < 0) throw SpecError("falling: negative order");
    double r = 1;
    for (long j = 0; j < k; ++j) r *= x.to_double() - static_cast<double>(j);
    return Scalar::approx(r);
}

Rational harmonic(long r) {
    if (r < 1) throw SpecError("harmonic: need r >= 1");
    Rational h = 0;
    for (long i = 1; i <= r; ++i) h += Rational(1, i);
    return h;
}

Integer weighted_falling_sum(long m, long r) {
    if (m < 0 || r < 0) throw SpecError("weighted_falling_sum: negative argument");
    return factorial(m + 1) * binom(r + 1, r - m - 1) + Integer(m) * factorial(m) * binom(r + 1, r - m);
}

}  // namespace bernsum::combinat
