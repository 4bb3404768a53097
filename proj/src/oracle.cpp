#include "bernsum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bernsum/errors.hpp"

namespace bernsum::oracle {

namespace {

// Moments of all kinds straight off a pmf vector (index = value).
// Uses only powers and falling products, nothing from the engine path.
OracleResult from_pmf_vector(const std::vector<Scalar>& pmf, int kmax, std::string method) {
    OracleResult r;
    r.method = std::move(method);
    const long n = static_cast<long>(pmf.size()) - 1;

    for (int k = 0; k <= kmax; ++k) {
        Scalar sum(0);
        for (long x = 0; x <= n; ++x) sum += Scalar(Rational(x)).pow(k) * pmf[x];
        r.raw.push_back(sum);
    }
    const Scalar mean = r.raw.size() > 1 ? r.raw[1] : Scalar(0);
    for (int k = 0; k <= kmax; ++k) {
        Scalar sum(0);
        for (long x = 0; x <= n; ++x) sum += (Scalar(Rational(x)) - mean).pow(k) * pmf[x];
        r.central.push_back(sum);
    }
    for (int k = 0; k <= kmax; ++k) {
        Scalar sum(0);
        for (long x = 0; x <= n; ++x) {
            Scalar prod(1);
            for (int j = 0; j < k; ++j) prod *= Scalar(Rational(x - j));
            sum += prod * pmf[x];
        }
        r.factorial.push_back(sum);
    }
    return r;
}

}  // namespace

const std::vector<Scalar>& OracleResult::of(MomentKind kind) const {
    switch (kind) {
        case MomentKind::Raw: return raw;
        case MomentKind::Central: return central;
        case MomentKind::Factorial: return factorial;
        default: throw UnsupportedKind("OracleResult::of: raw/central/factorial only");
    }
}

OracleResult enumerate_independent(const std::vector<Scalar>& p, int kmax) {
    const int n = static_cast<int>(p.size());
    if (n > 20) throw SubsetExplosion("enumerate_independent: 2^" + std::to_string(n) + " outcomes");
    std::vector<Scalar> pmf(n + 1, Scalar(0));
    // depth-first over outcomes so each probability product is one multiply
    auto walk = [&](auto&& self, int i, int count, const Scalar& prob) -> void {
        if (i == n) {
            pmf[count] += prob;
            return;
        }
        self(self, i + 1, count, prob * (Scalar(1) - p[i]));
        self(self, i + 1, count + 1, prob * p[i]);
    };
    walk(walk, 0, 0, Scalar(1));
    return from_pmf_vector(pmf, kmax, "enumeration");
}

OracleResult enumerate_matching(int n, int kmax) {
    if (n < 1) throw SpecError("enumerate_matching: n < 1");
    if (n > 8) throw SubsetExplosion("enumerate_matching: " + std::to_string(n) + "! permutations");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<long> counts(n + 1, 0);
    long total = 0;
    do {
        int fixed = 0;
        for (int i = 0; i < n; ++i) fixed += perm[i] == i;
        ++counts[fixed];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Scalar> pmf;
    pmf.reserve(n + 1);
    for (long c : counts) pmf.push_back(Scalar(Rational(c, total)));
    return from_pmf_vector(pmf, kmax, "enumeration");
}

OracleResult enumerate_urns(int n, long balls, int kmax) {
    if (n < 1) throw SpecError("enumerate_urns: n < 1");
    // odometer over weak compositions of `balls` into n parts
    std::vector<long> fill(n, 0);
    fill[0] = balls;
    std::vector<long> counts(n + 1, 0);
    long total = 0;
    while (true) {
        int empty = 0;
        for (long f : fill) empty += f == 0;
        ++counts[empty];
        if (++total > 1'000'000)
            throw SubsetExplosion("enumerate_urns: placement count exceeds 1e6");
        // next composition: move one ball from the first nonempty urn
        int i = 0;
        while (i < n && fill[i] == 0) ++i;
        if (i >= n - 1) break;  // all in the last urn (or no balls): done
        long head = fill[i];
        fill[i] = 0;
        fill[0] = head - 1;
        ++fill[i + 1];
    }
    std::vector<Scalar> pmf;
    pmf.reserve(n + 1);
    for (long c : counts) pmf.push_back(Scalar(Rational(c, total)));
    return from_pmf_vector(pmf, kmax, "enumeration");
}

OracleResult enumerate_hypergeometric(int N, int g, int n, int kmax) {
    if (N < 0 || g < 0 || n < 0 || g > N || n > N)
        throw SpecError("enumerate_hypergeometric: bad parameters");
    if (N > 24) throw SubsetExplosion("enumerate_hypergeometric: population too large");
    std::vector<long> counts(n + 1, 0);
    long total = 0;
    // individuals 0..g-1 carry the trait; enumerate all n-subsets
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        int trait = 0;
        for (int i : idx) trait += i < g;
        ++counts[trait];
        ++total;
        int i = n - 1;
        while (i >= 0 && idx[i] == N - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::vector<Scalar> pmf;
    pmf.reserve(n + 1);
    for (long c : counts) pmf.push_back(Scalar(Rational(c, total)));
    return from_pmf_vector(pmf, kmax, "enumeration");
}

OracleResult pmf_moments(const Dist& dist, int kmax) {
    if (!dist.finite_support()) throw UnsupportedKind("pmf_moments: finite support only");
    const long lo = dist.support_min(), hi = dist.support_max();
    std::vector<Scalar> pmf(hi + 1, Scalar(0));
    for (long x = std::max(lo, 0L); x <= hi; ++x) pmf[x] = dist.pmf(x);
    OracleResult r = from_pmf_vector(pmf, kmax, "pmf_sum");
    return r;
}

namespace {

// Bit-portable uniforms on top of the standard-specified mt19937_64.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

    // Lemire's bounded rejection method.
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = gen();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            std::uint64_t lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
        }
    }
};

Integer to_integer(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64));
    Integer out = (hi << 64) + Integer(static_cast<unsigned long>(u));
    return neg ? -out : out;
}

long sample_once(const Dist& dist, Rng& rng, const std::vector<double>& cdf) {
    const std::string name = dist.name();
    if (name == "matching") {
        const int n = dist.trial_count();
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        int fixed = 0;
        for (int i = 0; i < n; ++i) fixed += perm[i] == i;
        return fixed;
    }
    if (name == "binomial" || name == "poisson-binomial") {
        const auto spec = dist.spec_json();
        long count = 0;
        if (name == "binomial") {
            const double p = Scalar::parse(spec.at("p").get<std::string>()).to_double();
            const int n = spec.at("n").get<int>();
            for (int i = 0; i < n; ++i) count += rng.u01() < p;
        } else {
            for (const auto& v : spec.at("p"))
                count += rng.u01() < Scalar::parse(v.get<std::string>()).to_double();
        }
        return count;
    }
    if (name == "hypergeometric") {
        const auto spec = dist.spec_json();
        long N = spec.at("N").get<long>(), g = spec.at("g").get<long>(), n = spec.at("n").get<long>();
        long trait = 0;
        for (long j = 0; j < n; ++j) {
            if (rng.u01() * static_cast<double>(N - j) < static_cast<double>(g - trait) &&
                g - trait > 0)
                ++trait;
        }
        return trait;
    }
    if (name == "empty-urns") {
        const auto spec = dist.spec_json();
        const long n = spec.at("n").get<long>(), balls = spec.at("balls").get<long>();
        if (balls == 0) return n;
        // uniform multiset placement: random (n-1)-subset of balls+n-1 bar slots
        const long slots = balls + n - 1;
        std::vector<long> pos(slots);
        std::iota(pos.begin(), pos.end(), 0);
        for (long i = 0; i < n - 1; ++i)
            std::swap(pos[i], pos[i + static_cast<long>(rng.below(slots - i))]);
        std::vector<long> bars(pos.begin(), pos.begin() + (n - 1));
        std::sort(bars.begin(), bars.end());
        long empty = 0, prev = -1;
        for (long b : bars) {
            if (b - prev - 1 == 0) ++empty;  // gap before this bar
            prev = b;
        }
        if (slots - prev - 1 == 0) ++empty;  // gap after the last bar
        return empty;
    }
    if (name == "geometric") {
        const double p = dist.pmf(1).to_double();
        if (p >= 1.0) return 1;
        double u = rng.u01();
        while (u <= 0.0) u = rng.u01();
        return 1 + static_cast<long>(std::floor(std::log(u) / std::log1p(-p)));
    }
    if (name == "poisson") {
        const double lam = Scalar::parse(dist.spec_json().at("lambda").get<std::string>()).to_double();
        const double limit = std::exp(-lam);
        long k = 0;
        double prod = rng.u01();
        while (prod > limit) {
            ++k;
            prod *= rng.u01();
        }
        return k;
    }
    if (name == "benford") {
        const int b = dist.spec_json().at("base").get<int>();
        double d = std::floor(std::pow(static_cast<double>(b), rng.u01()));
        return std::clamp<long>(static_cast<long>(d), 1, b - 1);
    }
    // finite-support fall-through (soliton, cmp-binomial): inverse cdf
    const double u = rng.u01();
    const long lo = dist.support_min();
    for (size_t i = 0; i < cdf.size(); ++i)
        if (u < cdf[i]) return lo + static_cast<long>(i);
    return lo + static_cast<long>(cdf.size()) - 1;
}

}  // namespace

OracleResult monte_carlo(const Dist& dist, int kmax, long samples, std::uint64_t seed) {
    if (samples < 1000) throw SpecError("monte_carlo: need at least 1e3 samples");
    Rng rng(seed);

    std::vector<double> cdf;
    if (dist.finite_support() && dist.name() != "matching" && dist.name() != "empty-urns") {
        double acc = 0.0;
        for (long x = dist.support_min(); x <= dist.support_max(); ++x) {
            acc += dist.pmf(x).to_double();
            cdf.push_back(acc);
        }
    }

    // power sums up to 2*kmax for values and standard errors
    std::vector<__int128> sums(2 * kmax + 1, 0);
    for (long s = 0; s < samples; ++s) {
        const long x = sample_once(dist, rng, cdf);
        __int128 pw = 1;
        for (int j = 0; j <= 2 * kmax; ++j) {
            sums[j] += pw;
            pw *= x;
        }
    }

    OracleResult r;
    r.method = "monte_carlo";
    r.sample_count = samples;
    r.rng = "mt19937_64";
    for (int k = 0; k <= kmax; ++k) {
        Rational mean(to_integer(sums[k]), Integer(samples));
        r.raw.push_back(Scalar(mean));
        Rational mean_sq(to_integer(sums[2 * k]), Integer(samples));
        double var = (mean_sq - mean * mean).to_double();
        r.stderr_raw.push_back(std::sqrt(std::max(var, 0.0) / static_cast<double>(samples)));
    }
    return r;
}

}  // namespace bernsum::oracle
