#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bernsum/joint_model.hpp"

namespace bernsum {

enum class MomentKind { Raw, Central, Factorial, ExpectedFactorial, Choose };

std::string to_string(MomentKind k);
MomentKind moment_kind_from_string(const std::string& s);

/// E(X^k) = sum_{m=1}^{min(k,n)} S(k,m) * subset_sum(m); E(X^0) = 1.
Scalar raw_moment(const JointModel& model, int k);

/// E((X-mu)^k) via the binomial expansion around mu = E(X).
Scalar central_moment(const JointModel& model, int k);

/// E([X]_k) = k! * choose_expectation(model, k).
Scalar factorial_moment(const JointModel& model, int k);

/// E(C(X,m)) = sum over m-subsets of E(Y_{i1}...Y_{im}).
Scalar choose_expectation(const JointModel& model, int m);

/// E(X^k) = sum_{m=1}^k S2(k,m) E([X]_m); factorials indexed 0..>=k.
Scalar moments_from_factorial(std::span<const Scalar> factorials, int k);

/// E([X]_k) = sum_{m=1}^k S1(k,m) E(X^m); inverse of the above.
Scalar factorial_from_moments(std::span<const Scalar> moments, int k);

/// E((X-mu)^k) = (-mu)^k
///   + sum_{j=1}^k [ sum_{m=j}^k S2(m,j) C(k,m) (-mu)^{k-m} ] E([X]_j).
Scalar central_from_factorial(std::span<const Scalar> factorials, const Scalar& mu, int k);

/// E((X-mu)^k) from raw moments 0..k (helper shared with closed forms).
Scalar central_from_raw(std::span<const Scalar> raws, int k);

/// E(X!). Finite models only; collapses to sum_k k! Pr(X=k) with the
/// pmf recovered from the C(X,j) expectations (General/Exchangeable) or
/// the independent-product convolution (Independent kinds).
Scalar expected_factorial(const JointModel& model);

/// One term of the idempotent power expansion of (y_1+...+y_n)^k.
struct IdempotentTerm {
    int m;              // product length
    Integer coeff;      // S(k,m)
    Integer subsets;    // C(n,m)
};

/// Structured expansion; sum of coeff*subsets over terms equals n^k.
std::vector<IdempotentTerm> expand_idempotent_power(int n, int k);

struct MomentReport {
    MomentKind kind = MomentKind::Raw;
    int kmax = 0;
    std::vector<Scalar> values;    // index k = 0..kmax
    std::optional<Scalar> mu;      // set for central reports
    std::string provenance;        // "engine" | "closed_form" | "tail" | "oracle"
    std::optional<double> truncation_bound;

    bool approx() const;
    nlohmann::json to_json() const;
};

/// Bottom-up report over the engine; subset sums are computed once per m.
/// For IndependentTruncated models the report carries a residual bound
/// tail_bound * sum_m S(k,m) mu^{m-1}/(m-1)! on the worst (k = kmax) moment.
MomentReport engine_report(const JointModel& model, MomentKind kind, int kmax);

}  // namespace bernsum
