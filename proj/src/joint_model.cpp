#include "bernsum/joint_model.hpp"

#include <string>

#include "bernsum/errors.hpp"

namespace bernsum {

namespace {

void check_probability(const Scalar& v, const char* where) {
    const double slack = 1e-12;
    double d = v.to_double();
    if (d < -slack || d > 1.0 + slack)
        throw SpecError(std::string(where) + ": joint expectation " + v.str() + " outside [0,1]");
    if (v.is_exact() && (v.rat().sign() < 0 || v.rat() > Rational(1)))
        throw SpecError(std::string(where) + ": joint expectation " + v.str() + " outside [0,1]");
}

}  // namespace

JointModel JointModel::general(int n, JointFn joint, long budget) {
    if (n < 0) throw SpecError("JointModel::general: n < 0");
    JointModel m;
    m.kind_ = Kind::General;
    m.n_ = n;
    m.joint_ = std::move(joint);
    m.budget_ = budget;
    m.exact_ = true;  // resolved lazily per value; exactness tracked by Scalar
    return m;
}

JointModel JointModel::exchangeable(int n, SizeFn e) {
    if (n < 0) throw SpecError("JointModel::exchangeable: n < 0");
    JointModel m;
    m.kind_ = Kind::Exchangeable;
    m.n_ = n;
    m.e_by_size_.reserve(n + 1);
    for (int j = 0; j <= n; ++j) {
        Scalar v = e(j);
        check_probability(v, "JointModel::exchangeable");
        if (j == 0 && !(v == Scalar(1)))
            throw SpecError("JointModel::exchangeable: e(0) must be 1");
        if (j > 0) {
            // adding a factor cannot raise a product of indicators
            const Scalar& prev = m.e_by_size_.back();
            if (v.is_exact() && prev.is_exact()) {
                if (v.rat() > prev.rat())
                    throw SpecError("JointModel::exchangeable: e(m) increased at m=" + std::to_string(j));
            } else if (v.to_double() > prev.to_double() + 1e-12) {
                throw SpecError("JointModel::exchangeable: e(m) increased at m=" + std::to_string(j));
            }
        }
        m.exact_ = m.exact_ && v.is_exact();
        m.e_by_size_.push_back(std::move(v));
    }
    return m;
}

JointModel JointModel::independent(std::vector<Scalar> p) {
    JointModel m;
    m.kind_ = Kind::Independent;
    m.n_ = static_cast<int>(p.size());
    for (const auto& pi : p) {
        check_probability(pi, "JointModel::independent");
        m.exact_ = m.exact_ && pi.is_exact();
    }
    m.probs_ = std::move(p);
    return m;
}

JointModel JointModel::independent_truncated(const ProbFn& prob, long n_max, Scalar tail_bound) {
    if (n_max < 0) throw SpecError("JointModel::independent_truncated: n_max < 0");
    std::vector<Scalar> p;
    p.reserve(n_max);
    for (long i = 1; i <= n_max; ++i) p.push_back(prob(i));
    JointModel m = independent(std::move(p));
    m.kind_ = Kind::IndependentTruncated;
    m.tail_bound_ = std::move(tail_bound);
    return m;
}

const std::vector<Scalar>& JointModel::probabilities() const {
    if (probs_.empty() && kind_ != Kind::Independent && kind_ != Kind::IndependentTruncated)
        throw std::logic_error("JointModel::probabilities: not an independent model");
    return probs_;
}

Scalar JointModel::subset_sum(int m) const {
    if (m < 0) throw SpecError("JointModel::subset_sum: m < 0");
    if (m == 0) return Scalar(1);
    if (m > n_) return Scalar(0);

    switch (kind_) {
        case Kind::Exchangeable:
            return Scalar(combinat::binom(n_, m)) * e_by_size_[m];

        case Kind::Independent:
        case Kind::IndependentTruncated: {
            // Elementary symmetric polynomial e_m(p) by the usual DP.
            std::vector<Scalar> esym(m + 1, Scalar(0));
            esym[0] = Scalar(1);
            for (int i = 0; i < n_; ++i)
                for (int j = std::min(m, i + 1); j >= 1; --j)
                    esym[j] += esym[j - 1] * probs_[i];
            return esym[m];
        }

        case Kind::General: {
            Integer count = combinat::binom(n_, m);
            if (count > budget_)
                throw SubsetExplosion("subset_sum: C(" + std::to_string(n_) + "," + std::to_string(m) +
                                      ") = " + count.get_str() + " exceeds budget " + std::to_string(budget_));
            std::vector<int> idx(m);
            for (int i = 0; i < m; ++i) idx[i] = i;
            Scalar total(0);
            while (true) {
                Scalar v = joint_(std::span<const int>(idx));
                check_probability(v, "JointModel::general");
                total += v;
                // next combination in lexicographic order
                int i = m - 1;
                while (i >= 0 && idx[i] == n_ - m + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
            }
            return total;
        }
    }
    throw std::logic_error("JointModel::subset_sum: bad kind");
}

}  // namespace bernsum
