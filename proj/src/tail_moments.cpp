#include "bernsum/tail_moments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bernsum/errors.hpp"

namespace bernsum::tail {

using combinat::binom;
using combinat::factorial;
using combinat::surjections;

namespace {

constexpr long kTermCap = 1'000'000;

void check_unit_interval(double v, long M) {
    if (v < -1e-12 || v > 1.0 + 1e-12)
        throw SpecError("tail(" + std::to_string(M) + ") = " + std::to_string(v) + " outside [0,1]");
}

}  // namespace

CountDist CountDist::finite(TailFn tail, long max_m) {
    if (max_m < 0) throw SpecError("CountDist::finite: max_m < 0");
    CountDist d;
    d.tail_ = std::move(tail);
    d.max_m_ = max_m;
    double prev = 1.0 + 1e-12;
    bool exact_path = true;
    Scalar prev_exact(1);
    for (long M = 1; M <= max_m; ++M) {
        Scalar t = d.tail_(M);
        check_unit_interval(t.to_double(), M);
        if (exact_path && t.is_exact()) {
            if (M > 1 && t.rat() > prev_exact.rat())
                throw SpecError("CountDist: tail increased at M=" + std::to_string(M));
            prev_exact = t;
        } else {
            exact_path = false;
            if (t.to_double() > prev + 1e-12)
                throw SpecError("CountDist: tail increased at M=" + std::to_string(M));
        }
        prev = t.to_double();
    }
    return d;
}

CountDist CountDist::infinite(TailFn tail, DecayBound bound) {
    if (!(bound.q > 0.0 && bound.q < 1.0)) throw SpecError("CountDist: decay ratio must be in (0,1)");
    CountDist d;
    d.tail_ = std::move(tail);
    d.bound_ = bound;
    return d;
}

CountDist CountDist::infinite_scaled(TailFn raw_tail, double scale, DecayBound bound) {
    CountDist d = infinite(std::move(raw_tail), bound);
    if (!(scale > 0.0)) throw SpecError("CountDist: scale must be positive");
    d.scale_ = scale;
    return d;
}

Scalar CountDist::raw_tail(long M) const {
    if (M < 1) throw SpecError("CountDist::raw_tail: M < 1");
    if (max_m_ && M > *max_m_) return Scalar(0);
    return tail_(M);
}

Scalar CountDist::tail(long M) const {
    if (M <= 0) return Scalar(1);
    Scalar raw = raw_tail(M);
    if (!scaled()) return raw;
    return Scalar::approx(scale_ * raw.to_double());
}

namespace {

struct RawSum {
    Scalar raw;                            // sum of weight(M) * raw_tail(M)
    std::optional<double> residual_bound;  // true units; set for truncations
    long last_term = 0;
};

// sum_{M=start}^{..} weight(M) * raw_tail(M), exact over finite support,
// truncated under the decay certificate otherwise. Checks monotonicity
// and the certificate as it walks the series.
RawSum weighted_tail_sum(const CountDist& d, long start, const std::function<Integer(long)>& weight,
                         double epsilon) {
    if (start < 1) throw SpecError("weighted_tail_sum: start < 1");
    RawSum out{Scalar(0), std::nullopt, start - 1};

    if (d.finite_support()) {
        for (long M = start; M <= d.max_m(); ++M) {
            out.raw += Scalar(weight(M)) * d.raw_tail(M);
            out.last_term = M;
        }
        return out;
    }

    const auto [C, q, from] = d.bound();
    const double scale = d.scale();
    double qpow = std::pow(q, static_cast<double>(start));
    double prev_raw = 1.0 / scale + 1e30;  // no-op for the first comparison
    for (long M = start;; ++M, qpow *= q) {
        if (M - start >= kTermCap)
            throw DivergenceSuspected("weighted_tail_sum: no convergence within " +
                                      std::to_string(kTermCap) + " terms");
        const Scalar raw = d.raw_tail(M);
        const double true_tail = scale * raw.to_double();
        check_unit_interval(true_tail, M);
        if (raw.to_double() > prev_raw * (1.0 + 1e-9) + 1e-300)
            throw SpecError("CountDist: tail increased at M=" + std::to_string(M));
        prev_raw = raw.to_double();
        if (M >= from && true_tail > C * qpow * (1.0 + 1e-9) + 1e-300)
            throw DivergenceSuspected("tail(" + std::to_string(M) + ") = " + std::to_string(true_tail) +
                                      " violates decay certificate " + std::to_string(C * qpow));

        const Integer w = weight(M);
        out.raw += Scalar(w) * raw;
        out.last_term = M;

        if (M < from) continue;
        const double partial_true = scale * out.raw.to_double();
        const double next_w = weight(M + 1).get_d();
        const double bound_next = next_w * C * qpow * q;
        const double rho = q * weight(M + 2).get_d() / std::max(next_w, 1.0);
        if (rho < 1.0 && bound_next < epsilon * (std::fabs(partial_true) + 1.0)) {
            out.residual_bound = bound_next / (1.0 - rho);
            break;
        }
    }
    return out;
}

TailValue finish(const CountDist& d, RawSum s) {
    TailValue v;
    v.value = d.scaled() ? Scalar::approx(d.scale() * s.raw.to_double()) : s.raw;
    v.residual_bound = s.residual_bound;
    v.last_term = s.last_term;
    return v;
}

}  // namespace

TailValue moment_from_tail(const CountDist& d, int k, double epsilon) {
    if (k < 0) throw SpecError("moment_from_tail: k < 0");
    if (k == 0) return {Scalar(1), std::nullopt, 0};
    RawSum total{Scalar(0), std::nullopt, 0};
    for (int m = 1; m <= k; ++m) {
        RawSum w = weighted_tail_sum(d, m, [m](long M) { return binom(M - 1, m - 1); }, epsilon);
        const Integer s = surjections(k, m);
        total.raw += Scalar(s) * w.raw;
        total.last_term = std::max(total.last_term, w.last_term);
        if (w.residual_bound)
            total.residual_bound = total.residual_bound.value_or(0.0) + s.get_d() * *w.residual_bound;
    }
    return finish(d, std::move(total));
}

TailValue factorial_moment_from_tail(const CountDist& d, int k, double epsilon) {
    if (k < 0) throw SpecError("factorial_moment_from_tail: k < 0");
    if (k == 0) return {Scalar(1), std::nullopt, 0};
    RawSum w = weighted_tail_sum(d, k, [k](long M) { return binom(M - 1, k - 1); }, epsilon);
    const Integer kf = factorial(k);
    w.raw = Scalar(kf) * w.raw;
    if (w.residual_bound) w.residual_bound = kf.get_d() * *w.residual_bound;
    return finish(d, std::move(w));
}

TailValue moment_chakra(const CountDist& d, int k, double epsilon) {
    if (k < 0) throw SpecError("moment_chakra: k < 0");
    if (k == 0) return {Scalar(1), std::nullopt, 0};
    auto weight = [k](long M) {
        Integer hi, lo;
        mpz_ui_pow_ui(hi.get_mpz_t(), static_cast<unsigned long>(M), static_cast<unsigned long>(k));
        mpz_ui_pow_ui(lo.get_mpz_t(), static_cast<unsigned long>(M - 1), static_cast<unsigned long>(k));
        return hi - lo;
    };
    return finish(d, weighted_tail_sum(d, 1, weight, epsilon));
}

CountDist tail_from_pmf(const std::function<Scalar(long)>& pmf, long max_m) {
    if (max_m < 0) throw SpecError("tail_from_pmf: max_m < 0");
    std::vector<Scalar> p(max_m + 1);
    Scalar total(0);
    bool exact = true;
    for (long x = 0; x <= max_m; ++x) {
        p[x] = pmf(x);
        if (p[x].sign() < 0) throw NotNormalized("pmf(" + std::to_string(x) + ") is negative");
        exact = exact && p[x].is_exact();
        total += p[x];
    }
    if (exact) {
        if (!(total == Scalar(1)))
            throw NotNormalized("pmf sums to " + total.str() + ", expected 1");
    } else if (std::fabs(total.to_double() - 1.0) > 1e-9) {
        throw NotNormalized("pmf sums to " + total.str(12) + ", expected 1 within 1e-9");
    }

    // suffix sums, index M = 1..max_m
    std::vector<Scalar> suffix(max_m + 2, Scalar(0));
    for (long M = max_m; M >= 1; --M) suffix[M] = suffix[M + 1] + p[M];
    return CountDist::finite([suffix = std::move(suffix)](long M) { return suffix[M]; }, max_m);
}

CountDist count_dist_from(DistPtr dist) {
    if (!dist) throw SpecError("count_dist_from: null distribution");

    if (dist->finite_support())
        return CountDist::finite([dist](long M) { return dist->tail(M); }, dist->support_max());

    if (dist->name() == "geometric") {
        // tail(M) = (1-p)^{M-1} = (1/q) q^M exactly
        const double q = Scalar(Scalar(1) - dist->pmf(1)).to_double();  // 1 - p
        return CountDist::infinite([dist](long M) { return dist->tail(M); },
                                   DecayBound{1.0 / q, q, 1});
    }

    if (dist->name() == "poisson") {
        const auto spec = dist->spec_json();
        const Scalar lambda = Scalar::parse(spec.at("lambda").get<std::string>());
        const double lam = lambda.to_double();
        if (lam == 0.0) return CountDist::finite([](long) { return Scalar(0); }, 0);

        // numeric certificate: tail decays faster than (1/2)^M eventually
        const long horizon = static_cast<long>(std::ceil(4.0 * lam)) + 40;
        double cmax = 0.0, pow2 = 2.0;
        for (long M = 1; M <= horizon; ++M, pow2 *= 2.0)
            cmax = std::max(cmax, dist->tail(M).to_double() * pow2);
        const DecayBound bound{2.0 * cmax, 0.5, 1};

        if (lambda.is_exact()) {
            // exact channel: Pr(N >= M) = exp(-lambda) * sum_{l>=M} lambda^l/l!,
            // with the series cut a fixed horizon past M
            const Rational lr = lambda.rat();
            const long extra = 64 + static_cast<long>(std::ceil(4.0 * lam));
            auto raw = [lr, extra](long M) {
                Rational term = lr.pow(M) / Rational(factorial(M));
                Rational sum = term;
                for (long l = M; l < M + extra; ++l) {
                    term = term * lr / Rational(l + 1);
                    sum += term;
                }
                return Scalar(sum);
            };
            return CountDist::infinite_scaled(raw, std::exp(-lam), bound);
        }
        return CountDist::infinite([dist](long M) { return dist->tail(M); }, bound);
    }

    throw UnsupportedKind(dist->name() + ": no tail construction for infinite support");
}

}  // namespace bernsum::tail
