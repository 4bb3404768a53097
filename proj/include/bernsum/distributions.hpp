#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernsum/moments.hpp"

namespace bernsum {

/// A named distribution instance: parameters, pmf, tail probability,
/// joint expectations (where the variable is built from Bernoulli
/// indicators), and closed-form moments.
///
/// Bernoulli-sum constructions (binomial, poisson-binomial,
/// hypergeometric, cmp-binomial, empty-urns, matching) additionally
/// expose joint_expectation / as_joint_model; poisson, geometric,
/// soliton and benford throw NotBernoulliSum there and are served by the
/// tail-probability machinery instead.
class Dist {
  public:
    virtual ~Dist() = default;

    virtual std::string name() const = 0;
    virtual nlohmann::json spec_json() const = 0;

    virtual bool finite_support() const { return true; }
    virtual long support_min() const { return 0; }
    virtual long support_max() const;  // throws for infinite support

    /// Pr(X = x); 0 outside the support.
    virtual Scalar pmf(long x) const = 0;

    /// Pr(X >= M); tail(0) = 1. Default: pmf suffix sums (finite support).
    virtual Scalar tail(long M) const;

    virtual bool is_bernoulli_sum() const { return false; }
    virtual int trial_count() const;  // n, Bernoulli-sum specs only

    /// E(Y_{i1}...Y_{im}) for any m-subset (exchangeable constructions).
    /// PoissonBinomial is not exchangeable; it only offers as_joint_model.
    virtual Scalar joint_expectation(int m) const;

    virtual JointModel as_joint_model() const;

    /// Closed-form moment of the requested kind; kind must be one of
    /// Raw / Central / Factorial (Choose = Factorial / k!).
    virtual Scalar closed_form_moment(MomentKind kind, int k) const = 0;

  protected:
    [[noreturn]] void not_bernoulli_sum() const;
    Scalar central_closed(int k) const;  // Prop-4 expansion over closed raws
};

using DistPtr = std::shared_ptr<const Dist>;

DistPtr make_binomial(int n, Scalar p);
DistPtr make_poisson_binomial(std::vector<Scalar> p);
DistPtr make_hypergeometric(int N, int g, int n);
DistPtr make_cmp_binomial(int n, Scalar p, Scalar nu);
DistPtr make_empty_urns(int n, long balls);
DistPtr make_matching(int n);
DistPtr make_poisson(Scalar lambda);
DistPtr make_geometric(Scalar p);
DistPtr make_soliton(int r);
DistPtr make_benford(int base);

/// Parse {"dist":"binomial","n":10,"p":"1/2"}. Probability/rate fields
/// accept "a/b" strings (exact) or JSON numbers; non-integer numbers
/// force the Approx path.
DistPtr parse_dist(const nlohmann::json& spec);

/// Prop-14's printed soliton factorial moment (known-discrepant form,
/// kept for documentation): k! [ (r-1)/r C(r,k) - C(r-3,k) - (k-2)^2 C(r-3,k-1) ].
Scalar soliton_printed_factorial_moment(int r, int k);

/// Moment report from a distribution's closed forms.
MomentReport closed_form_report(const Dist& dist, MomentKind kind, int kmax);

}  // namespace bernsum
