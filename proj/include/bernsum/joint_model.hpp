#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bernsum/combinat.hpp"
#include "bernsum/scalar.hpp"

namespace bernsum {

inline constexpr long kDefaultSubsetBudget = 2'000'000;

/// Joint-expectation provider for a finite Bernoulli family Y_1..Y_n.
///
/// The one primitive the moment engine needs is the m-subset sum
/// sum_{|S|=m} E(prod_{i in S} Y_i), exposed as subset_sum(m). Each kind
/// supplies it its own way:
///   General      — caller's joint function over explicit index subsets
///                  (0-based), enumerated under a subset budget;
///   Exchangeable — e(m) depends on subset size only, so the sum
///                  collapses to C(n,m) * e(m);
///   Independent  — product expectations, so the sum is the elementary
///                  symmetric polynomial e_m(p_1..p_n);
///   IndependentTruncated — an independent prefix of an infinite family,
///                  carrying the caller-asserted bound on sum_{i>N} p_i.
class JointModel {
  public:
    enum class Kind { General, Exchangeable, Independent, IndependentTruncated };

    using JointFn = std::function<Scalar(std::span<const int>)>;
    using SizeFn = std::function<Scalar(int)>;
    using ProbFn = std::function<Scalar(long)>;

    static JointModel general(int n, JointFn joint, long budget = kDefaultSubsetBudget);
    // e must be defined for 0 <= m <= n with e(0) = 1, values in [0,1],
    // non-increasing in m; validated eagerly.
    static JointModel exchangeable(int n, SizeFn e);
    static JointModel independent(std::vector<Scalar> p);
    // Independent family truncated to indices 1..n_max (prob(i), 1-based),
    // with sum_{i>n_max} p_i <= tail_bound asserted by the caller.
    static JointModel independent_truncated(const ProbFn& prob, long n_max, Scalar tail_bound);

    Kind kind() const { return kind_; }
    int size() const { return n_; }
    bool is_exact() const { return exact_; }
    long budget() const { return budget_; }
    JointModel with_budget(long budget) const {
        JointModel m = *this;
        m.budget_ = budget;
        return m;
    }
    std::optional<Scalar> truncation_tail_bound() const { return tail_bound_; }

    /// sum over m-subsets of E(Y_{i1}...Y_{im}); 1 at m=0, 0 for m > n.
    /// Throws SubsetExplosion when General enumeration exceeds the budget.
    Scalar subset_sum(int m) const;

    const std::vector<Scalar>& probabilities() const;  // Independent kinds only

  private:
    JointModel() = default;

    Kind kind_ = Kind::General;
    int n_ = 0;
    bool exact_ = true;
    long budget_ = kDefaultSubsetBudget;
    JointFn joint_;
    std::vector<Scalar> e_by_size_;  // Exchangeable: e(0)..e(n)
    std::vector<Scalar> probs_;      // Independent kinds
    std::optional<Scalar> tail_bound_;
};

}  // namespace bernsum
