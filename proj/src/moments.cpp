#include "bernsum/moments.hpp"

#include <algorithm>
#include <cmath>

#include "bernsum/errors.hpp"

namespace bernsum {

using combinat::binom;
using combinat::factorial;
using combinat::stirling1_signed;
using combinat::stirling2;
using combinat::surjections;

std::string to_string(MomentKind k) {
    switch (k) {
        case MomentKind::Raw: return "raw";
        case MomentKind::Central: return "central";
        case MomentKind::Factorial: return "factorial";
        case MomentKind::ExpectedFactorial: return "expected_factorial";
        case MomentKind::Choose: return "choose";
    }
    return "?";
}

MomentKind moment_kind_from_string(const std::string& s) {
    if (s == "raw") return MomentKind::Raw;
    if (s == "central") return MomentKind::Central;
    if (s == "factorial") return MomentKind::Factorial;
    if (s == "expected_factorial" || s == "expected-factorial") return MomentKind::ExpectedFactorial;
    if (s == "choose") return MomentKind::Choose;
    throw SpecError("unknown moment kind '" + s + "'");
}

Scalar raw_moment(const JointModel& model, int k) {
    if (k < 0) throw SpecError("raw_moment: k < 0");
    if (k == 0) return Scalar(1);
    Scalar total(0);
    const int top = std::min(k, model.size());
    for (int m = 1; m <= top; ++m)
        total += Scalar(surjections(k, m)) * model.subset_sum(m);
    return total;
}

Scalar central_moment(const JointModel& model, int k) {
    if (k < 0) throw SpecError("central_moment: k < 0");
    if (k == 0) return Scalar(1);
    std::vector<Scalar> raws(k + 1);
    for (int l = 0; l <= k; ++l) raws[l] = raw_moment(model, l);
    return central_from_raw(raws, k);
}

Scalar central_from_raw(std::span<const Scalar> raws, int k) {
    if (static_cast<int>(raws.size()) < k + 1) throw SpecError("central_from_raw: need raw moments 0..k");
    const Scalar neg_mu = -raws[1];
    Scalar total(0);
    for (int l = 0; l <= k; ++l)
        total += Scalar(binom(k, l)) * neg_mu.pow(k - l) * raws[l];
    return total;
}

Scalar choose_expectation(const JointModel& model, int m) {
    if (m < 0) throw SpecError("choose_expectation: m < 0");
    return model.subset_sum(m);
}

Scalar factorial_moment(const JointModel& model, int k) {
    if (k < 0) throw SpecError("factorial_moment: k < 0");
    return Scalar(factorial(k)) * model.subset_sum(k);
}

Scalar moments_from_factorial(std::span<const Scalar> factorials, int k) {
    if (static_cast<int>(factorials.size()) < k + 1)
        throw SpecError("moments_from_factorial: need factorial moments 0..k");
    if (k == 0) return factorials[0];
    Scalar total(0);
    for (int m = 1; m <= k; ++m) total += Scalar(stirling2(k, m)) * factorials[m];
    return total;
}

Scalar factorial_from_moments(std::span<const Scalar> moments, int k) {
    if (static_cast<int>(moments.size()) < k + 1)
        throw SpecError("factorial_from_moments: need moments 0..k");
    if (k == 0) return moments[0];
    Scalar total(0);
    for (int m = 1; m <= k; ++m) total += Scalar(stirling1_signed(k, m)) * moments[m];
    return total;
}

Scalar central_from_factorial(std::span<const Scalar> factorials, const Scalar& mu, int k) {
    if (static_cast<int>(factorials.size()) < k + 1)
        throw SpecError("central_from_factorial: need factorial moments 0..k");
    if (k == 0) return Scalar(1);
    const Scalar neg_mu = -mu;
    Scalar total = neg_mu.pow(k);
    for (int j = 1; j <= k; ++j) {
        Scalar weight(0);
        for (int m = j; m <= k; ++m)
            weight += Scalar(stirling2(m, j) * binom(k, m)) * neg_mu.pow(k - m);
        total += weight * factorials[j];
    }
    return total;
}

namespace {

// Pr(X = x) for x = 0..n out of the C(X,j) expectations, via the
// alternating inversion Pr(X=x) = sum_{j>=x} (-1)^{x+j} C(j,x) A_j.
// Exact for finite models because A_j = 0 beyond j = n.
std::vector<Scalar> pmf_from_choose(const std::vector<Scalar>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<Scalar> pmf(n + 1, Scalar(0));
    for (int x = 0; x <= n; ++x) {
        Scalar p(0);
        for (int j = x; j <= n; ++j) {
            Scalar term = Scalar(binom(j, x)) * a[j];
            p += ((j - x) % 2 == 0) ? term : -term;
        }
        pmf[x] = p;
    }
    return pmf;
}

}  // namespace

Scalar expected_factorial(const JointModel& model) {
    const int n = model.size();
    std::vector<Scalar> pmf;

    if (model.kind() == JointModel::Kind::Independent ||
        model.kind() == JointModel::Kind::IndependentTruncated) {
        // convolution of (1 - p_i + p_i z)
        pmf.assign(n + 1, Scalar(0));
        pmf[0] = Scalar(1);
        const auto& probs = model.probabilities();
        for (int i = 0; i < n; ++i) {
            const Scalar& p = probs[i];
            const Scalar q = Scalar(1) - p;
            for (int x = i + 1; x >= 1; --x) pmf[x] = pmf[x] * q + pmf[x - 1] * p;
            pmf[0] = pmf[0] * q;
        }
    } else {
        // 2^n joint evaluations in total across subset sizes
        if (model.kind() == JointModel::Kind::General) {
            Integer total;
            mpz_ui_pow_ui(total.get_mpz_t(), 2, static_cast<unsigned long>(n));
            if (total > model.budget())
                throw SubsetExplosion("expected_factorial: 2^" + std::to_string(n) +
                                      " subset evaluations exceed budget " + std::to_string(model.budget()));
        }
        std::vector<Scalar> a(n + 1);
        for (int j = 0; j <= n; ++j) a[j] = model.subset_sum(j);
        pmf = pmf_from_choose(a);
    }

    Scalar total(0);
    for (int x = 0; x <= n; ++x) total += Scalar(factorial(x)) * pmf[x];
    return total;
}

std::vector<IdempotentTerm> expand_idempotent_power(int n, int k) {
    if (n < 1 || k < 1) throw SpecError("expand_idempotent_power: need n >= 1, k >= 1");
    std::vector<IdempotentTerm> terms;
    for (int m = 1; m <= std::min(n, k); ++m)
        terms.push_back({m, surjections(k, m), binom(n, m)});
    return terms;
}

bool MomentReport::approx() const {
    return std::any_of(values.begin(), values.end(), [](const Scalar& v) { return !v.is_exact(); });
}

nlohmann::json MomentReport::to_json() const {
    nlohmann::json values_obj = nlohmann::json::object();
    for (int k = 0; k < static_cast<int>(values.size()); ++k)
        values_obj[std::to_string(k)] = values[k].str();
    nlohmann::json j{
        {"kind", to_string(kind)},
        {"kmax", kmax},
        {"values", values_obj},
        {"provenance", provenance},
        {"approx", approx()},
        {"truncation_bound", nullptr},
    };
    if (truncation_bound) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", *truncation_bound);
        j["truncation_bound"] = std::string(buf);
    }
    if (mu) j["mu"] = mu->str();
    return j;
}

namespace {

double truncation_residual_bound(const JointModel& model, int kmax) {
    if (!model.truncation_tail_bound()) return 0.0;
    const double tail = model.truncation_tail_bound()->to_double();
    double mu = tail;
    for (const auto& p : model.probabilities()) mu += p.to_double();
    // missing subsets each contain an index beyond the truncation:
    // e_m(all) - e_m(prefix) <= tail * mu^{m-1} / (m-1)!
    double bound = 0.0;
    for (int m = 1; m <= kmax; ++m)
        bound += surjections(kmax, m).get_d() * tail * std::pow(mu, m - 1) / factorial(m - 1).get_d();
    return bound;
}

}  // namespace

MomentReport engine_report(const JointModel& model, MomentKind kind, int kmax) {
    if (kmax < 0) throw SpecError("engine_report: kmax < 0");
    MomentReport rep;
    rep.kind = kind;
    rep.kmax = kmax;
    rep.provenance = "engine";
    rep.values.reserve(kmax + 1);

    if (kind == MomentKind::ExpectedFactorial) {
        rep.kmax = 0;
        rep.values.push_back(expected_factorial(model));
        return rep;
    }

    // one subset_sum evaluation per m, shared across k
    const int top = std::min(kmax, model.size());
    std::vector<Scalar> a(top + 1);
    for (int m = 0; m <= top; ++m) a[m] = model.subset_sum(m);

    std::vector<Scalar> raws(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        Scalar total = k == 0 ? Scalar(1) : Scalar(0);
        for (int m = 1; m <= std::min(k, top); ++m)
            total += Scalar(surjections(k, m)) * a[m];
        raws[k] = total;
    }

    for (int k = 0; k <= kmax; ++k) {
        switch (kind) {
            case MomentKind::Raw: rep.values.push_back(raws[k]); break;
            case MomentKind::Central: rep.values.push_back(central_from_raw(raws, k)); break;
            case MomentKind::Factorial:
                rep.values.push_back(Scalar(factorial(k)) * (k <= top ? a[k] : Scalar(0)));
                break;
            case MomentKind::Choose:
                rep.values.push_back(k <= top ? a[k] : Scalar(0));
                break;
            case MomentKind::ExpectedFactorial: break;  // handled above
        }
    }
    if (kind == MomentKind::Central && kmax >= 1) rep.mu = raws[1];

    if (model.truncation_tail_bound()) rep.truncation_bound = truncation_residual_bound(model, std::max(kmax, 1));
    return rep;
}

}  // namespace bernsum
