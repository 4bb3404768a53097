#include "bernsum/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "bernsum/errors.hpp"

namespace bernsum {

using combinat::bell;
using combinat::binom;
using combinat::derangements;
using combinat::factorial;
using combinat::falling;
using combinat::harmonic;
using combinat::stirling2;
using combinat::surjections;

namespace {

Scalar one_minus(const Scalar& p) { return Scalar(1) - p; }

void check_prob_param(const Scalar& p, const std::string& name) {
    if (p.is_exact()) {
        if (p.rat().sign() < 0 || p.rat() > Rational(1))
            throw SpecError(name + " must lie in [0,1], got " + p.str());
    } else if (p.to_double() < 0.0 || p.to_double() > 1.0) {
        throw SpecError(name + " must lie in [0,1], got " + p.str());
    }
}

std::vector<Scalar> elementary_symmetric(const std::vector<Scalar>& p, int mmax) {
    std::vector<Scalar> esym(mmax + 1, Scalar(0));
    esym[0] = Scalar(1);
    for (size_t i = 0; i < p.size(); ++i)
        for (int j = std::min<int>(mmax, static_cast<int>(i) + 1); j >= 1; --j)
            esym[j] += esym[j - 1] * p[i];
    return esym;
}

double kahan_sum(const std::vector<double>& terms) {
    double sum = 0.0, c = 0.0;
    for (double t : terms) {
        double y = t - c;
        double s = sum + y;
        c = (s - sum) - y;
        sum = s;
    }
    return sum;
}

}  // namespace

// ---------------------------------------------------------------- Dist base

long Dist::support_max() const {
    throw UnsupportedKind(name() + ": infinite support");
}

Scalar Dist::tail(long M) const {
    if (M <= support_min()) return Scalar(1);
    if (!finite_support()) throw UnsupportedKind(name() + ": no default tail for infinite support");
    Scalar total(0);
    for (long x = std::max(M, support_min()); x <= support_max(); ++x) total += pmf(x);
    return total;
}

int Dist::trial_count() const { not_bernoulli_sum(); }

Scalar Dist::joint_expectation(int) const { not_bernoulli_sum(); }

JointModel Dist::as_joint_model() const { not_bernoulli_sum(); }

void Dist::not_bernoulli_sum() const {
    throw NotBernoulliSum(name() + " is not constructed as a Bernoulli sum; use the tail-moment route");
}

Scalar Dist::central_closed(int k) const {
    std::vector<Scalar> raws(k + 1);
    for (int l = 0; l <= k; ++l) raws[l] = closed_form_moment(MomentKind::Raw, l);
    return central_from_raw(raws, k);
}

namespace {

// Shared base for the exchangeable Bernoulli-sum constructions.
class ExchangeableDist : public Dist, public std::enable_shared_from_this<ExchangeableDist> {
  public:
    bool is_bernoulli_sum() const override { return true; }
    int trial_count() const override { return n_; }
    long support_max() const override { return n_; }

    JointModel as_joint_model() const override {
        auto self = shared_from_this();
        return JointModel::exchangeable(n_, [self](int m) { return self->joint_expectation(m); });
    }

    // raw closed form: sum_m S(k,m) C(n,m) e(m)
    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        switch (kind) {
            case MomentKind::Raw: {
                Scalar total(1);
                if (k == 0) return total;
                total = Scalar(0);
                for (int m = 1; m <= std::min(k, n_); ++m)
                    total += Scalar(surjections(k, m) * binom(n_, m)) * joint_expectation(m);
                return total;
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial:
                if (k > n_) return Scalar(0);
                return Scalar(falling(Integer(n_), k)) * joint_expectation(k);
            case MomentKind::Choose:
                if (k > n_) return Scalar(0);
                return Scalar(binom(n_, k)) * joint_expectation(k);
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

  protected:
    explicit ExchangeableDist(int n) : n_(n) {}
    int n_;
};

// ------------------------------------------------------------- Binomial

class Binomial final : public ExchangeableDist {
  public:
    Binomial(int n, Scalar p) : ExchangeableDist(n), p_(std::move(p)) {
        if (n < 0) throw SpecError("binomial: n < 0");
        check_prob_param(p_, "binomial p");
    }

    std::string name() const override { return "binomial"; }
    nlohmann::json spec_json() const override {
        return {{"dist", "binomial"}, {"n", n_}, {"p", p_.str()}};
    }

    Scalar pmf(long x) const override {
        if (x < 0 || x > n_) return Scalar(0);
        return Scalar(binom(n_, x)) * p_.pow(x) * one_minus(p_).pow(n_ - x);
    }

    Scalar joint_expectation(int m) const override {
        if (m < 0 || m > n_) throw SpecError("joint_expectation: need 0 <= m <= n");
        return p_.pow(m);
    }

    // [n]_k p^k
    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (kind == MomentKind::Factorial)
            return Scalar(falling(Integer(n_), k)) * p_.pow(k);
        return ExchangeableDist::closed_form_moment(kind, k);
    }

  private:
    Scalar p_;
};

// ------------------------------------------------------- Poisson binomial

class PoissonBinomial final : public Dist, public std::enable_shared_from_this<PoissonBinomial> {
  public:
    explicit PoissonBinomial(std::vector<Scalar> p) : p_(std::move(p)) {
        for (const auto& pi : p_) check_prob_param(pi, "poisson-binomial p_i");
    }

    std::string name() const override { return "poisson-binomial"; }
    nlohmann::json spec_json() const override {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& pi : p_) arr.push_back(pi.str());
        return {{"dist", "poisson-binomial"}, {"p", arr}};
    }

    bool is_bernoulli_sum() const override { return true; }
    int trial_count() const override { return static_cast<int>(p_.size()); }
    long support_max() const override { return static_cast<long>(p_.size()); }

    Scalar pmf(long x) const override {
        const int n = trial_count();
        if (x < 0 || x > n) return Scalar(0);
        std::vector<Scalar> conv(n + 1, Scalar(0));
        conv[0] = Scalar(1);
        for (int i = 0; i < n; ++i) {
            const Scalar q = one_minus(p_[i]);
            for (int j = i + 1; j >= 1; --j) conv[j] = conv[j] * q + conv[j - 1] * p_[i];
            conv[0] = conv[0] * q;
        }
        return conv[x];
    }

    // The joint expectation depends on which indices are multiplied, so
    // the size-only accessor is not meaningful here.
    Scalar joint_expectation(int) const override {
        throw UnsupportedKind("poisson-binomial is not exchangeable; use as_joint_model");
    }

    JointModel as_joint_model() const override {
        auto self = shared_from_this();
        return JointModel::general(trial_count(), [self](std::span<const int> idx) {
            Scalar prod(1);
            for (int i : idx) prod *= self->p_[i];
            return prod;
        });
    }

    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        const int n = trial_count();
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                auto esym = elementary_symmetric(p_, std::min(k, n));
                Scalar total(0);
                for (int m = 1; m <= std::min(k, n); ++m)
                    total += Scalar(surjections(k, m)) * esym[m];
                return total;
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial: {
                if (k > n) return Scalar(0);
                auto esym = elementary_symmetric(p_, k);
                return Scalar(factorial(k)) * esym[k];
            }
            case MomentKind::Choose: {
                if (k > n) return Scalar(0);
                return elementary_symmetric(p_, k)[k];
            }
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

  private:
    std::vector<Scalar> p_;
};

// -------------------------------------------------------- Hypergeometric

class Hypergeometric final : public ExchangeableDist {
  public:
    Hypergeometric(int N, int g, int n) : ExchangeableDist(n), N_(N), g_(g) {
        if (N < 0 || g < 0 || n < 0 || g > N || n > N)
            throw SpecError("hypergeometric: need 0 <= g <= N and 0 <= n <= N");
    }

    std::string name() const override { return "hypergeometric"; }
    nlohmann::json spec_json() const override {
        return {{"dist", "hypergeometric"}, {"N", N_}, {"g", g_}, {"n", n_}};
    }

    Scalar pmf(long x) const override {
        if (x < 0 || x > n_) return Scalar(0);
        return Scalar(Rational(binom(g_, x) * binom(N_ - g_, n_ - x), binom(N_, n_)));
    }

    // [g]_m / [N]_m, zero once m exceeds g
    Scalar joint_expectation(int m) const override {
        if (m < 0 || m > n_) throw SpecError("joint_expectation: need 0 <= m <= n");
        if (m > g_) return Scalar(0);
        return Scalar(Rational(falling(Integer(g_), m), falling(Integer(N_), m)));
    }

    // [n]_k [g]_k / [N]_k
    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (kind == MomentKind::Factorial) {
            if (k > n_ || k > g_) return Scalar(0);
            return Scalar(Rational(falling(Integer(n_), k) * falling(Integer(g_), k),
                                   falling(Integer(N_), k)));
        }
        return ExchangeableDist::closed_form_moment(kind, k);
    }

  private:
    int N_, g_;
};

// --------------------------------------------------------- CMP-binomial

// Exact path when p is exact and nu an exact integer; otherwise doubles
// with compensated summation for the normalizer and weighted sums.
class CmpBinomial final : public ExchangeableDist {
  public:
    CmpBinomial(int n, Scalar p, Scalar nu)
        : ExchangeableDist(n), p_(std::move(p)), nu_(std::move(nu)) {
        if (n < 0) throw SpecError("cmp-binomial: n < 0");
        check_prob_param(p_, "cmp-binomial p");
        exact_ = p_.is_exact() && nu_.is_exact() && nu_.rat().is_integer();
        normalizer_ = weighted_sum([](long) { return Integer(1); }, 0, n_, /*nu_shift=*/0);
        if (normalizer_.is_zero()) throw SpecError("cmp-binomial: zero normalizer");
    }

    std::string name() const override { return "cmp-binomial"; }
    nlohmann::json spec_json() const override {
        return {{"dist", "cmp-binomial"}, {"n", n_}, {"p", p_.str()}, {"nu", nu_.str()}};
    }

    Scalar pmf(long x) const override {
        if (x < 0 || x > n_) return Scalar(0);
        return weighted_sum([](long) { return Integer(1); }, x, x, 0) / normalizer_;
    }

    // (1/C) sum_{l=m}^{n} C(n-m, l-m) C(n,l)^{nu-1} p^l (1-p)^{n-l}
    Scalar joint_expectation(int m) const override {
        if (m < 0 || m > n_) throw SpecError("joint_expectation: need 0 <= m <= n");
        const int n = n_;
        Scalar s = weighted_sum([n, m](long l) { return binom(n - m, l - m); }, m, n_, -1);
        return s / normalizer_;
    }

    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                // inner sum runs l = m..n (not min{n,k})
                Scalar total(0);
                for (int m = 1; m <= std::min(k, n_); ++m) {
                    Scalar inner = weighted_sum([m](long l) { return binom(l, m); }, m, n_, 0);
                    total += Scalar(surjections(k, m)) * inner;
                }
                return total / normalizer_;
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial: {
                if (k > n_) return Scalar(0);
                Scalar inner = weighted_sum([k](long l) { return binom(l, k); }, k, n_, 0);
                return Scalar(factorial(k)) * inner / normalizer_;
            }
            case MomentKind::Choose: {
                if (k > n_) return Scalar(0);
                return weighted_sum([k](long l) { return binom(l, k); }, k, n_, 0) / normalizer_;
            }
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

  private:
    // sum_{l=lo}^{hi} w(l) C(n,l)^{nu+nu_shift} p^l (1-p)^{n-l}
    Scalar weighted_sum(const std::function<Integer(long)>& w, long lo, long hi, long nu_shift) const {
        if (exact_) {
            long nu_int = static_cast<long>(nu_.rat().numerator().get_si()) + nu_shift;
            Rational total(0);
            for (long l = lo; l <= hi; ++l) {
                Rational term = Rational(w(l)) * Rational(binom(n_, l)).pow(nu_int) *
                                p_.rat().pow(l) * (Rational(1) - p_.rat()).pow(n_ - l);
                total += term;
            }
            return Scalar(total);
        }
        const double p = p_.to_double(), q = 1.0 - p, nu = nu_.to_double() + static_cast<double>(nu_shift);
        std::vector<double> terms;
        terms.reserve(hi - lo + 1);
        for (long l = lo; l <= hi; ++l)
            terms.push_back(w(l).get_d() * std::pow(binom(n_, l).get_d(), nu) *
                            std::pow(p, static_cast<double>(l)) * std::pow(q, static_cast<double>(n_ - l)));
        return Scalar::approx(kahan_sum(terms));
    }

    Scalar p_, nu_;
    bool exact_;
    Scalar normalizer_;
};

// ----------------------------------------------------------- Empty urns

class EmptyUrns final : public ExchangeableDist {
  public:
    EmptyUrns(int n, long balls) : ExchangeableDist(n), balls_(balls) {
        if (n < 1) throw SpecError("empty-urns: need n >= 1");
        if (balls < 0) throw SpecError("empty-urns: need balls >= 0");
    }

    std::string name() const override { return "empty-urns"; }
    nlohmann::json spec_json() const override {
        return {{"dist", "empty-urns"}, {"n", n_}, {"balls", balls_}};
    }

    Scalar pmf(long x) const override {
        if (x < 0 || x > n_) return Scalar(0);
        if (balls_ == 0) return Scalar(x == n_ ? 1 : 0);
        // choose the empty urns, then a composition of the balls over the rest
        Integer ways = binom(n_, x) * binom(balls_ - 1, n_ - x - 1);
        return Scalar(Rational(ways, binom(balls_ + n_ - 1, balls_)));
    }

    // [n-1]_m / [balls+n-1]_m
    Scalar joint_expectation(int m) const override {
        if (m < 0 || m > n_) throw SpecError("joint_expectation: need 0 <= m <= n");
        if (balls_ == 0) return Scalar(1);  // every urn empty
        return Scalar(Rational(falling(Integer(n_ - 1), m), falling(Integer(balls_ + n_ - 1), m)));
    }

  private:
    long balls_;
};

// ------------------------------------------------------------- Matching

class Matching final : public ExchangeableDist {
  public:
    explicit Matching(int n) : ExchangeableDist(n) {
        if (n < 1) throw SpecError("matching: need n >= 1");
    }

    std::string name() const override { return "matching"; }
    nlohmann::json spec_json() const override { return {{"dist", "matching"}, {"n", n_}}; }

    Scalar pmf(long x) const override {
        if (x < 0 || x > n_) return Scalar(0);
        return Scalar(Rational(binom(n_, x) * derangements(n_ - x), factorial(n_)));
    }

    Scalar joint_expectation(int m) const override {
        if (m < 0 || m > n_) throw SpecError("joint_expectation: need 0 <= m <= n");
        return Scalar(Rational(factorial(n_ - m), factorial(n_)));
    }

    // B_k for k <= n; partitions into at most n blocks beyond that
    Scalar closed_form_moment(MomentKind kind, int k) const override {
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                Integer total = 0;
                for (int m = 1; m <= std::min(k, n_); ++m) total += stirling2(k, m);
                return Scalar(total);
            }
            case MomentKind::Factorial:
                return Scalar(k <= n_ ? 1 : 0);
            default:
                return ExchangeableDist::closed_form_moment(kind, k);
        }
    }
};

// -------------------------------------------------------------- Poisson

class Poisson final : public Dist {
  public:
    explicit Poisson(Scalar lambda) : lambda_(std::move(lambda)) {
        if (lambda_.sign() < 0) throw SpecError("poisson: lambda < 0");
    }

    std::string name() const override { return "poisson"; }
    nlohmann::json spec_json() const override { return {{"dist", "poisson"}, {"lambda", lambda_.str()}}; }

    bool finite_support() const override { return false; }

    Scalar pmf(long x) const override {
        if (x < 0) return Scalar(0);
        const double l = lambda_.to_double();
        if (l == 0.0) return Scalar::approx(x == 0 ? 1.0 : 0.0);
        // exp(-l) l^x / x! via logs to dodge overflow
        return Scalar::approx(std::exp(-l + x * std::log(l) - std::lgamma(x + 1.0)));
    }

    Scalar tail(long M) const override {
        if (M <= 0) return Scalar(1);
        const double l = lambda_.to_double();
        if (l == 0.0) return Scalar::approx(0.0);
        double total = 0.0, term = pmf(M).to_double();
        for (long x = M; x < M + 10000; ++x) {
            total += term;
            term *= l / static_cast<double>(x + 1);
            if (term <= total * 1e-18 && x >= M + 4) break;
        }
        return Scalar::approx(std::min(total, 1.0));
    }

    // Touchard polynomial in lambda
    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                Scalar total(0);
                for (int m = 1; m <= k; ++m) total += Scalar(stirling2(k, m)) * lambda_.pow(m);
                return total;
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial:
                return lambda_.pow(k);
            case MomentKind::Choose:
                return lambda_.pow(k) / Scalar(factorial(k));
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

    const Scalar& lambda() const { return lambda_; }

  private:
    Scalar lambda_;
};

// ------------------------------------------------------------ Geometric

class Geometric final : public Dist {
  public:
    explicit Geometric(Scalar p) : p_(std::move(p)) {
        check_prob_param(p_, "geometric p");
        if (p_.is_zero()) throw SpecError("geometric: p must be positive");
    }

    std::string name() const override { return "geometric"; }
    nlohmann::json spec_json() const override { return {{"dist", "geometric"}, {"p", p_.str()}}; }

    bool finite_support() const override { return p_ == Scalar(1); }
    long support_min() const override { return 1; }
    long support_max() const override {
        if (!finite_support()) return Dist::support_max();
        return 1;
    }

    Scalar pmf(long x) const override {
        if (x < 1) return Scalar(0);
        return p_ * one_minus(p_).pow(x - 1);
    }

    Scalar tail(long M) const override {
        if (M <= 1) return Scalar(1);
        return one_minus(p_).pow(M - 1);
    }

    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        const Scalar q = one_minus(p_);
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                Scalar total(0);
                for (int m = 1; m <= k; ++m)
                    total += Scalar(surjections(k, m)) * q.pow(m - 1) / p_.pow(m);
                return total;
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial:
                if (k == 0) return Scalar(1);
                return q.pow(k - 1) / p_.pow(k);
            case MomentKind::Choose:
                if (k == 0) return Scalar(1);
                return q.pow(k - 1) / (p_.pow(k) * Scalar(factorial(k)));
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

    const Scalar& p() const { return p_; }

  private:
    Scalar p_;
};

// -------------------------------------------------------------- Soliton

class Soliton final : public Dist {
  public:
    explicit Soliton(int r) : r_(r) {
        if (r < 2) throw SpecError("soliton: need r >= 2");
    }

    std::string name() const override { return "soliton"; }
    nlohmann::json spec_json() const override { return {{"dist", "soliton"}, {"r", r_}}; }

    long support_min() const override { return 1; }
    long support_max() const override { return r_; }

    Scalar pmf(long x) const override {
        if (x == 1) return Scalar(Rational(1, r_));
        if (x >= 2 && x <= r_) return Scalar(Rational(1, x * (x - 1)));
        return Scalar(0);
    }

    // telescoped: (r-1)/r - (M-2)/(M-1) on 2..r
    Scalar tail(long M) const override {
        if (M <= 1) return Scalar(1);
        if (M > r_) return Scalar(0);
        return Scalar(Rational(r_ - 1, r_) - Rational(M - 2, M - 1));
    }

    // E(C(N,m)): H_r at m=1, the Lemma-13 closed form beyond.
    Rational choose_moment(int m) const {
        if (m == 0) return Rational(1);
        if (m == 1) return harmonic(r_);
        return Rational(r_ - 1, r_) * Rational(binom(r_, m)) - Rational(binom(r_ - 1, m)) -
               Rational(m - 2, m - 1) * Rational(binom(r_ - 1, m - 1));
    }

    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                Rational total(0);
                for (int m = 1; m <= k; ++m) total += Rational(surjections(k, m)) * choose_moment(m);
                return Scalar(total);
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial:
                return Scalar(Rational(factorial(k)) * choose_moment(k));
            case MomentKind::Choose:
                return Scalar(choose_moment(k));
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

  private:
    int r_;
};

// -------------------------------------------------------------- Benford

class Benford final : public Dist {
  public:
    explicit Benford(int base) : b_(base) {
        if (base < 2) throw SpecError("benford: need base >= 2");
    }

    std::string name() const override { return "benford"; }
    nlohmann::json spec_json() const override { return {{"dist", "benford"}, {"base", b_}}; }

    long support_min() const override { return 1; }
    long support_max() const override { return b_ - 1; }

    Scalar pmf(long x) const override {
        if (x < 1 || x > b_ - 1) return Scalar(0);
        return Scalar::approx(log_b(x + 1) - log_b(x));
    }

    Scalar tail(long M) const override {
        if (M <= 1) return Scalar(1);
        if (M > b_ - 1) return Scalar(0);
        return Scalar::approx(1.0 - log_b(M));
    }

    // C(b-1,m) - sum_{M=m}^{b-1} C(M-1,m-1) log_b(M)
    double tail_weight(int m) const {
        std::vector<double> terms{binom(b_ - 1, m).get_d()};
        for (long M = m; M <= b_ - 1; ++M)
            terms.push_back(-binom(M - 1, m - 1).get_d() * log_b(M));
        return kahan_sum(terms);
    }

    Scalar closed_form_moment(MomentKind kind, int k) const override {
        if (k < 0) throw SpecError("closed_form_moment: k < 0");
        switch (kind) {
            case MomentKind::Raw: {
                if (k == 0) return Scalar(1);
                std::vector<double> terms;
                for (int m = 1; m <= k; ++m) terms.push_back(surjections(k, m).get_d() * tail_weight(m));
                return Scalar::approx(kahan_sum(terms));
            }
            case MomentKind::Central:
                return central_closed(k);
            case MomentKind::Factorial:
                if (k == 0) return Scalar(1);
                return Scalar::approx(factorial(k).get_d() * tail_weight(k));
            case MomentKind::Choose:
                if (k == 0) return Scalar(1);
                return Scalar::approx(tail_weight(k));
            default:
                throw UnsupportedKind("closed_form_moment: unsupported kind");
        }
    }

  private:
    double log_b(long x) const { return std::log(static_cast<double>(x)) / std::log(static_cast<double>(b_)); }
    int b_;
};

}  // namespace

// -------------------------------------------------------------- factories

DistPtr make_binomial(int n, Scalar p) { return std::make_shared<Binomial>(n, std::move(p)); }
DistPtr make_poisson_binomial(std::vector<Scalar> p) { return std::make_shared<PoissonBinomial>(std::move(p)); }
DistPtr make_hypergeometric(int N, int g, int n) { return std::make_shared<Hypergeometric>(N, g, n); }
DistPtr make_cmp_binomial(int n, Scalar p, Scalar nu) {
    return std::make_shared<CmpBinomial>(n, std::move(p), std::move(nu));
}
DistPtr make_empty_urns(int n, long balls) { return std::make_shared<EmptyUrns>(n, balls); }
DistPtr make_matching(int n) { return std::make_shared<Matching>(n); }
DistPtr make_poisson(Scalar lambda) { return std::make_shared<Poisson>(std::move(lambda)); }
DistPtr make_geometric(Scalar p) { return std::make_shared<Geometric>(std::move(p)); }
DistPtr make_soliton(int r) { return std::make_shared<Soliton>(r); }
DistPtr make_benford(int base) { return std::make_shared<Benford>(base); }

Scalar soliton_printed_factorial_moment(int r, int k) {
    if (r < 2 || k < 2) throw SpecError("soliton_printed_factorial_moment: need r >= 2, k >= 2");
    Rational bracket = Rational(r - 1, r) * Rational(binom(r, k)) - Rational(binom(r - 3, k)) -
                       Rational((k - 2) * (k - 2)) * Rational(binom(r - 3, k - 1));
    return Scalar(Rational(factorial(k)) * bracket);
}

namespace {

Scalar scalar_from_json(const nlohmann::json& v, const std::string& field) {
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    if (v.is_number_integer()) return Scalar(Rational(v.get<long>()));
    if (v.is_number_float()) return Scalar::approx(v.get<double>());
    throw SpecError("field '" + field + "' must be a number or \"a/b\" string");
}

template <typename T>
T int_field(const nlohmann::json& spec, const std::string& field) {
    if (!spec.contains(field)) throw SpecError("missing field '" + field + "'");
    const auto& v = spec.at(field);
    if (!v.is_number_integer()) throw SpecError("field '" + field + "' must be an integer");
    return v.get<T>();
}

Scalar scalar_field(const nlohmann::json& spec, const std::string& field) {
    if (!spec.contains(field)) throw SpecError("missing field '" + field + "'");
    return scalar_from_json(spec.at(field), field);
}

}  // namespace

DistPtr parse_dist(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("dist"))
        throw SpecError("spec must be a JSON object with a \"dist\" field");
    std::string d = spec.at("dist").get<std::string>();
    std::replace(d.begin(), d.end(), '_', '-');

    if (d == "binomial") return make_binomial(int_field<int>(spec, "n"), scalar_field(spec, "p"));
    if (d == "poisson-binomial") {
        if (!spec.contains("p") || !spec.at("p").is_array())
            throw SpecError("poisson-binomial needs a \"p\" array");
        std::vector<Scalar> p;
        for (const auto& v : spec.at("p")) p.push_back(scalar_from_json(v, "p"));
        return make_poisson_binomial(std::move(p));
    }
    if (d == "hypergeometric")
        return make_hypergeometric(int_field<int>(spec, "N"), int_field<int>(spec, "g"),
                                   int_field<int>(spec, "n"));
    if (d == "cmp-binomial")
        return make_cmp_binomial(int_field<int>(spec, "n"), scalar_field(spec, "p"),
                                 scalar_field(spec, "nu"));
    if (d == "empty-urns")
        return make_empty_urns(int_field<int>(spec, "n"), int_field<long>(spec, "balls"));
    if (d == "matching") return make_matching(int_field<int>(spec, "n"));
    if (d == "poisson") return make_poisson(scalar_field(spec, "lambda"));
    if (d == "geometric") return make_geometric(scalar_field(spec, "p"));
    if (d == "soliton") return make_soliton(int_field<int>(spec, "r"));
    if (d == "benford") return make_benford(int_field<int>(spec, "base"));
    throw SpecError("unknown distribution '" + d + "'");
}

MomentReport closed_form_report(const Dist& dist, MomentKind kind, int kmax) {
    MomentReport rep;
    rep.kind = kind;
    rep.kmax = kmax;
    rep.provenance = "closed_form";
    if (kind == MomentKind::ExpectedFactorial) {
        if (!dist.finite_support())
            throw UnsupportedKind("expected factorial needs finite support");
        Scalar total(0);
        for (long x = dist.support_min(); x <= dist.support_max(); ++x)
            total += Scalar(factorial(x)) * dist.pmf(x);
        rep.kmax = 0;
        rep.values.push_back(total);
        return rep;
    }
    for (int k = 0; k <= kmax; ++k) rep.values.push_back(dist.closed_form_moment(kind, k));
    if (kind == MomentKind::Central && kmax >= 1) rep.mu = dist.closed_form_moment(MomentKind::Raw, 1);
    return rep;
}

}  // namespace bernsum
