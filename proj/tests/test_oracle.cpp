#include <doctest.h>

#include "bernsum/oracle.hpp"

using namespace bernsum;
using namespace bernsum::oracle;

namespace {
Scalar half() { return Scalar(Rational(1, 2)); }
}  // namespace

TEST_CASE("enumerate_independent over all outcomes") {
    auto r = enumerate_independent({half(), half(), half()}, 3);
    CHECK(r.raw[2] == Scalar(3));  // direct 8-outcome sum
    CHECK(r.raw[0] == Scalar(1));
    CHECK(r.raw[1] == Scalar(Rational(3, 2)));
    CHECK(r.central[2] == Scalar(Rational(3, 4)));
    CHECK(r.factorial[2] == Scalar(Rational(3, 2)));

    auto one = enumerate_independent({Scalar(1)}, 5);
    CHECK(one.raw[5] == Scalar(1));

    auto zero = enumerate_independent({Scalar(0), Scalar(0)}, 4);
    for (int k = 1; k <= 4; ++k) CHECK(zero.raw[k] == Scalar(0));

    CHECK_THROWS_AS(enumerate_independent(std::vector<Scalar>(21, half()), 2), SubsetExplosion);
}

TEST_CASE("enumerate_matching counts fixed points over n! permutations") {
    auto r3 = enumerate_matching(3, 2);
    CHECK(r3.raw[2] == Scalar(2));  // (9+1+1+1+0+0)/6
    CHECK(r3.raw[1] == Scalar(1));  // (3+1+1+1)/6

    auto r1 = enumerate_matching(1, 5);
    for (int k = 0; k <= 5; ++k) CHECK(r1.raw[k] == Scalar(1));

    CHECK_THROWS_AS(enumerate_matching(9, 2), SubsetExplosion);
}

TEST_CASE("enumerate_urns over all equiprobable placements") {
    auto r = enumerate_urns(3, 2, 2);
    CHECK(r.raw[1] == Scalar(Rational(3, 2)));  // empty counts 2,2,2,1,1,1

    auto none = enumerate_urns(2, 0, 1);
    CHECK(none.raw[1] == Scalar(2));  // no balls, both urns empty

    auto one_ball = enumerate_urns(2, 1, 2);
    CHECK(one_ball.raw[2] == Scalar(1));  // always exactly one empty urn
}

TEST_CASE("enumerate_hypergeometric over all samples") {
    auto r = enumerate_hypergeometric(5, 3, 2, 2);
    // E([X]_2)/2! = 3/10 over the 10 equally likely 2-subsets
    CHECK(r.factorial[2] == Scalar(Rational(3, 5)));
    CHECK(r.raw[1] == Scalar(Rational(6, 5)));
}

TEST_CASE("pmf_moments sums the distribution's own pmf") {
    auto soliton = pmf_moments(*make_soliton(5), 1);
    CHECK(soliton.raw[1] == Scalar(Rational(137, 60)));

    auto benford = pmf_moments(*make_benford(10), 1);
    CHECK(benford.raw[1].to_double() == doctest::Approx(3.44023696712).epsilon(1e-9));

    for (const char* p : {"1/4", "2/3"}) {
        auto b = pmf_moments(*make_binomial(1, Scalar::parse(p)), 4);
        for (int k = 1; k <= 4; ++k) CHECK(b.raw[k] == Scalar::parse(p));  // idempotent indicator
    }
}

TEST_CASE("monte carlo is deterministic per seed and lands near truth") {
    auto a = monte_carlo(*make_binomial(100, Scalar::approx(0.3)), 2, 20000, 42);
    auto b = monte_carlo(*make_binomial(100, Scalar::approx(0.3)), 2, 20000, 42);
    CHECK(a.raw[1] == b.raw[1]);  // bit-for-bit reproducible
    CHECK(a.rng == "mt19937_64");
    CHECK(*a.sample_count == 20000);
    CHECK(a.raw[1].to_double() == doctest::Approx(30.0).epsilon(0.02));
    CHECK(std::fabs(a.raw[1].to_double() - 30.0) <= 5.0 * a.stderr_raw[1]);

    auto c = monte_carlo(*make_binomial(100, Scalar::approx(0.3)), 1, 20000, 43);
    CHECK(c.raw[1] != a.raw[1]);  // seed actually matters

    CHECK_THROWS_AS(monte_carlo(*make_matching(5), 1, 10, 1), SpecError);
}

TEST_CASE("monte carlo covers the non-trivial samplers") {
    auto urns = monte_carlo(*make_empty_urns(4, 3), 1, 50000, 7);
    // closed mean: n (n-1)/(balls+n-1) = 4*3/6 = 2
    CHECK(std::fabs(urns.raw[1].to_double() - 2.0) <= 4.0 * urns.stderr_raw[1]);

    auto match = monte_carlo(*make_matching(12), 1, 50000, 7);
    CHECK(std::fabs(match.raw[1].to_double() - 1.0) <= 4.0 * match.stderr_raw[1]);

    auto hyper = monte_carlo(*make_hypergeometric(10, 4, 5), 1, 50000, 7);
    CHECK(std::fabs(hyper.raw[1].to_double() - 2.0) <= 4.0 * hyper.stderr_raw[1]);

    auto geo = monte_carlo(*make_geometric(Scalar(Rational(1, 2))), 1, 50000, 7);
    CHECK(std::fabs(geo.raw[1].to_double() - 2.0) <= 4.0 * geo.stderr_raw[1]);

    auto poi = monte_carlo(*make_poisson(Scalar(2)), 2, 50000, 7);
    CHECK(std::fabs(poi.raw[2].to_double() - 6.0) <= 4.0 * poi.stderr_raw[2]);

    auto sol = monte_carlo(*make_soliton(5), 1, 50000, 7);
    CHECK(std::fabs(sol.raw[1].to_double() - 137.0 / 60.0) <= 4.0 * sol.stderr_raw[1]);

    auto ben = monte_carlo(*make_benford(10), 1, 50000, 7);
    CHECK(std::fabs(ben.raw[1].to_double() - 3.44023697) <= 4.0 * ben.stderr_raw[1]);
}
