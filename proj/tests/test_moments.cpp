#include <doctest.h>

#include <algorithm>
#include <random>

#include "bernsum/moments.hpp"
#include "bernsum/oracle.hpp"

using namespace bernsum;
using combinat::binom;
using combinat::factorial;
using combinat::falling;
using combinat::surjections;

namespace {

Scalar rat(long n, long d = 1) { return Scalar(Rational(n, d)); }

JointModel fair_coins(int n) {
    return JointModel::exchangeable(n, [](int m) { return Scalar(Rational(1, 2)).pow(m); });
}

JointModel matching_model(int n) {
    return JointModel::exchangeable(
        n, [n](int m) { return Scalar(Rational(factorial(n - m), factorial(n))); });
}

}  // namespace

TEST_CASE("raw moments from the surjection expansion") {
    CHECK(raw_moment(fair_coins(3), 2) == rat(3));  // brute force over 2^3 outcomes
    CHECK(raw_moment(fair_coins(3), 0) == rat(1));
    CHECK(raw_moment(matching_model(3), 2) == rat(2));  // equals B_2
}

TEST_CASE("central moments") {
    auto model = JointModel::independent({rat(1, 2), rat(1, 2), rat(1, 2)});
    CHECK(central_moment(model, 2) == rat(3, 4));  // binomial(3,1/2) variance
    CHECK(central_moment(model, 1) == rat(0));
    CHECK(central_moment(model, 0) == rat(1));
}

TEST_CASE("factorial moments and choose expectations") {
    auto model = JointModel::independent({rat(1, 2), rat(1, 2), rat(1, 2)});
    CHECK(factorial_moment(model, 2) == rat(3, 2));  // [3]_2 (1/2)^2
    for (int n = 2; n <= 6; ++n)
        for (int k = 0; k <= n; ++k) CHECK(factorial_moment(matching_model(n), k) == rat(1));
    CHECK(factorial_moment(model, 4) == rat(0));  // k > n

    CHECK(choose_expectation(JointModel::independent({rat(1, 2), rat(1, 2)}), 1) == rat(1));
    CHECK(choose_expectation(model, 0) == rat(1));
    // hypergeometric joint N=5, g=3, n=2
    auto hyper = JointModel::exchangeable(2, [](int m) {
        return Scalar(Rational(falling(Integer(3), m), falling(Integer(5), m)));
    });
    CHECK(choose_expectation(hyper, 2) == rat(3, 10));
    CHECK(factorial_moment(hyper, 2) == rat(3, 5));
}

TEST_CASE("factorial moment equals k! choose expectation") {
    auto model = JointModel::independent({rat(1, 3), rat(1, 4), rat(2, 5), rat(1, 2)});
    for (int k = 0; k <= 5; ++k)
        CHECK(factorial_moment(model, k) == Scalar(factorial(k)) * choose_expectation(model, k));
}

TEST_CASE("stirling transforms between moment kinds") {
    // poisson(1) factorial moments are all 1
    std::vector<Scalar> poisson_facts{rat(1), rat(1), rat(1), rat(1)};
    CHECK(moments_from_factorial(poisson_facts, 3) == rat(5));  // B_3
    CHECK(moments_from_factorial(poisson_facts, 1) == rat(1));

    std::vector<Scalar> binom_facts{rat(1), rat(3, 2), rat(3, 2), rat(3, 4)};
    CHECK(moments_from_factorial(binom_facts, 2) == rat(3));

    std::vector<Scalar> binom_moments{rat(1), rat(3, 2), rat(3)};
    CHECK(factorial_from_moments(binom_moments, 2) == rat(3, 2));  // [3]_2 (1/2)^2
    CHECK(factorial_from_moments(binom_moments, 1) == rat(3, 2));

    // the transforms are inverse triangular maps
    std::mt19937 gen(3);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Scalar> vals{rat(1)};
        for (int k = 1; k <= 8; ++k) vals.push_back(rat(coef(gen), 4));
        for (int k = 0; k <= 8; ++k) {
            std::vector<Scalar> moments(vals.size());
            for (int j = 0; j <= 8; ++j) moments[j] = moments_from_factorial(vals, j);
            CHECK(factorial_from_moments(moments, k) == vals[k]);
        }
    }
}

TEST_CASE("central moments straight from factorial moments") {
    std::vector<Scalar> facts{rat(1), rat(3, 2), rat(3, 2), rat(3, 4)};
    const Scalar mu = facts[1];
    CHECK(central_from_factorial(facts, mu, 2) == rat(3, 4));
    CHECK(central_from_factorial(facts, mu, 1) == rat(0));
    // Var = E([X]_2) - [mu]_2
    CHECK(central_from_factorial(facts, mu, 2) ==
          facts[2] - Scalar(falling(mu.rat(), 2)));
}

TEST_CASE("expected factorial") {
    CHECK(expected_factorial(JointModel::independent({rat(1, 2), rat(1, 2)})) == rat(5, 4));
    CHECK(expected_factorial(JointModel::independent({rat(1), rat(1), rat(1)})) == rat(6));
    CHECK(expected_factorial(JointModel::independent({rat(0)})) == rat(1));
    // collapsed and general routes agree
    auto general = JointModel::general(3, [](std::span<const int> idx) {
        Scalar prod(1);
        const Rational ps[] = {Rational(1, 2), Rational(1, 3), Rational(1, 4)};
        for (int i : idx) prod *= Scalar(ps[i]);
        return prod;
    });
    auto indep = JointModel::independent({rat(1, 2), rat(1, 3), rat(1, 4)});
    CHECK(expected_factorial(general) == expected_factorial(indep));
}

TEST_CASE("idempotent power expansion") {
    auto terms = expand_idempotent_power(2, 2);
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].m == 1);
    CHECK(terms[0].coeff == 1);
    CHECK(terms[0].subsets == 2);
    CHECK(terms[1].m == 2);
    CHECK(terms[1].coeff == 2);
    CHECK(terms[1].subsets == 1);

    auto single = expand_idempotent_power(1, 5);
    REQUIRE(single.size() == 1);
    CHECK(single[0].coeff == 1);

    auto linear = expand_idempotent_power(3, 1);
    REQUIRE(linear.size() == 1);
    CHECK(linear[0].subsets == 3);

    // conservation: sum_m S(k,m) C(n,m) = n^k
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k <= 8; ++k) {
            Integer total = 0;
            for (const auto& t : expand_idempotent_power(n, k)) total += t.coeff * t.subsets;
            Integer expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), n, k);
            CHECK(total == expect);
        }
    }
}

TEST_CASE("engine equals the exhaustive oracle on independent families") {
    std::mt19937 gen(11);
    std::uniform_int_distribution<long> num(0, 6);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 1 + trial % 7;
        std::vector<Scalar> p;
        for (int i = 0; i < n; ++i) p.push_back(rat(num(gen), 6));
        auto truth = oracle::enumerate_independent(p, 6);
        auto model = JointModel::independent(p);
        for (int k = 0; k <= 6; ++k) {
            CHECK(raw_moment(model, k) == truth.raw[k]);
            CHECK(central_moment(model, k) == truth.central[k]);
            CHECK(factorial_moment(model, k) == truth.factorial[k]);
        }
        // permutation invariance of the probability list
        std::shuffle(p.begin(), p.end(), gen);
        CHECK(raw_moment(JointModel::independent(p), 4) == truth.raw[4]);
    }
}

TEST_CASE("variance symmetry holds on every model") {
    std::vector<JointModel> models;
    models.push_back(fair_coins(4));
    models.push_back(matching_model(5));
    models.push_back(JointModel::independent({rat(1, 3), rat(2, 3), rat(1, 5)}));
    for (const auto& m : models) {
        Scalar lhs = raw_moment(m, 2) - raw_moment(m, 1).pow(2);
        Scalar rhs = factorial_moment(m, 2) - Scalar(falling(raw_moment(m, 1).rat(), 2));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("general kind enumerates subsets and honors the budget") {
    auto indep = JointModel::independent({rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 5)});
    auto general = JointModel::general(4, [](std::span<const int> idx) {
        Scalar prod(1);
        const Rational ps[] = {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)};
        for (int i : idx) prod *= Scalar(ps[i]);
        return prod;
    });
    for (int k = 0; k <= 5; ++k) CHECK(raw_moment(general, k) == raw_moment(indep, k));

    auto tight = general.with_budget(3);
    CHECK_THROWS_AS(raw_moment(tight, 3), SubsetExplosion);
    auto wide = JointModel::general(30, [](std::span<const int>) { return Scalar(Rational(1, 3)); });
    CHECK_THROWS_AS(expected_factorial(wide.with_budget(100)), SubsetExplosion);
}

TEST_CASE("exchangeable model validation") {
    CHECK_THROWS_AS(JointModel::exchangeable(2, [](int m) { return Scalar(Rational(m)); }),
                    SpecError);  // increasing
    CHECK_THROWS_AS(JointModel::exchangeable(2, [](int) { return Scalar(Rational(1, 2)); }),
                    SpecError);  // e(0) != 1
    CHECK_THROWS_AS(JointModel::exchangeable(1, [](int m) { return Scalar(Rational(-1, 2) * Rational(m)); }),
                    SpecError);  // out of range
}

TEST_CASE("independent-truncated models report a residual bound") {
    // p_i = 2^-i, mu = 1
    auto prob = [](long i) { return Scalar(Rational(1, 2).pow(i)); };
    std::vector<Scalar> raw3;
    for (long nmax : {5L, 10L, 20L, 40L}) {
        auto model = JointModel::independent_truncated(prob, nmax, Scalar(Rational(1, 2).pow(nmax)));
        auto rep = engine_report(model, MomentKind::Raw, 3);
        REQUIRE(rep.truncation_bound.has_value());
        raw3.push_back(rep.values[3]);
        // residual bound dominates the distance to the next refinement
        if (raw3.size() >= 2) {
            const Scalar& prev = raw3[raw3.size() - 2];
            const Scalar& cur = raw3.back();
            CHECK(cur.rat() >= prev.rat());  // truncations only grow
        }
    }
    // successive values contract under the reported bound of the coarser one
    auto coarse = engine_report(
        JointModel::independent_truncated(prob, 5, Scalar(Rational(1, 2).pow(5))), MomentKind::Raw, 3);
    auto fine = engine_report(
        JointModel::independent_truncated(prob, 40, Scalar(Rational(1, 2).pow(40))), MomentKind::Raw, 3);
    CHECK((fine.values[3] - coarse.values[3]).to_double() <= *coarse.truncation_bound);
}

TEST_CASE("moment report serialization") {
    auto model = JointModel::independent({rat(1, 2), rat(1, 2)});
    auto rep = engine_report(model, MomentKind::Raw, 2);
    auto j = rep.to_json();
    CHECK(j.at("kind") == "raw");
    CHECK(j.at("kmax") == 2);
    CHECK(j.at("values").at("0") == "1");
    CHECK(j.at("values").at("1") == "1");
    CHECK(j.at("values").at("2") == "3/2");
    CHECK(j.at("provenance") == "engine");
    CHECK(j.at("approx") == false);
    CHECK(j.at("truncation_bound").is_null());

    auto central = engine_report(model, MomentKind::Central, 2);
    CHECK(central.mu.has_value());
    CHECK(central.values[1] == rat(0));
    CHECK(central.values[2].rat() >= Rational(0));
}
