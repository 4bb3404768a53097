#include <doctest.h>

#include "bernsum/distributions.hpp"
#include "bernsum/oracle.hpp"

using namespace bernsum;

namespace {
Scalar rat(long n, long d = 1) { return Scalar(Rational(n, d)); }
}  // namespace

TEST_CASE("binomial closed forms") {
    auto b = make_binomial(3, rat(1, 2));
    CHECK(b->closed_form_moment(MomentKind::Factorial, 2) == rat(3, 2));  // [n]_k p^k
    CHECK(b->closed_form_moment(MomentKind::Raw, 2) == rat(3));
    CHECK(b->closed_form_moment(MomentKind::Central, 2) == rat(3, 4));
    CHECK(b->joint_expectation(2) == rat(1, 4));
    CHECK(b->pmf(1) == rat(3, 8));
    CHECK(b->tail(2) == rat(4, 8));
    CHECK(b->closed_form_moment(MomentKind::Factorial, 4) == rat(0));
}

TEST_CASE("poisson binomial exposes the general joint model") {
    auto pb = make_poisson_binomial({rat(1, 2), rat(1, 3)});
    CHECK(pb->pmf(0) == rat(1, 3));
    CHECK(pb->pmf(1) == rat(1, 2));
    CHECK(pb->pmf(2) == rat(1, 6));
    CHECK(pb->closed_form_moment(MomentKind::Raw, 1) == rat(5, 6));
    CHECK(pb->closed_form_moment(MomentKind::Factorial, 2) == rat(1, 3));
    CHECK_THROWS_AS(pb->joint_expectation(1), UnsupportedKind);

    auto model = pb->as_joint_model();
    CHECK(model.kind() == JointModel::Kind::General);
    CHECK(raw_moment(model, 2) == pb->closed_form_moment(MomentKind::Raw, 2));
}

TEST_CASE("hypergeometric joints and moments") {
    auto h = make_hypergeometric(5, 3, 2);
    CHECK(h->joint_expectation(2) == rat(3, 10));  // [3]_2/[5]_2
    CHECK(h->closed_form_moment(MomentKind::Factorial, 2) == rat(3, 5));
    auto truth = oracle::enumerate_hypergeometric(5, 3, 2, 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(h->closed_form_moment(MomentKind::Raw, k) == truth.raw[k]);
        CHECK(h->closed_form_moment(MomentKind::Central, k) == truth.central[k]);
        CHECK(h->closed_form_moment(MomentKind::Factorial, k) == truth.factorial[k]);
    }
    CHECK_THROWS_AS(make_hypergeometric(4, 5, 2), SpecError);
    CHECK_THROWS_AS(make_hypergeometric(4, 2, 5), SpecError);
}

TEST_CASE("matching: joints, bell moments, pmf") {
    auto m = make_matching(3);
    CHECK(m->joint_expectation(3) == rat(1, 6));
    CHECK(m->pmf(0) == rat(1, 3));  // 2 derangements of 6 permutations
    CHECK(m->pmf(2) == rat(0));
    CHECK(m->closed_form_moment(MomentKind::Raw, 4) == rat(14));  // B_4 - S2(4,4)
    for (int n : {3, 5, 7}) {
        auto mm = make_matching(n);
        for (int k = 0; k <= n; ++k) {
            CHECK(mm->closed_form_moment(MomentKind::Raw, k) == Scalar(combinat::bell(k)));
            CHECK(mm->closed_form_moment(MomentKind::Factorial, k) == rat(1));
        }
    }
}

TEST_CASE("empty urns: joints, pmf, hypergeometric equivalence") {
    auto u = make_empty_urns(3, 2);
    CHECK(u->joint_expectation(1) == rat(1, 2));  // (n-1)/(balls+n-1)
    CHECK(u->pmf(1) == rat(1, 2));
    CHECK(u->pmf(2) == rat(1, 2));

    for (int n = 1; n <= 6; ++n) {
        for (long balls = 1; balls <= 6; ++balls) {
            auto urns = make_empty_urns(n, balls);
            auto hyper = make_hypergeometric(static_cast<int>(balls) + n - 1, n - 1, n);
            for (int k = 0; k <= 6; ++k)
                for (auto kind : {MomentKind::Raw, MomentKind::Central, MomentKind::Factorial})
                    CHECK(urns->closed_form_moment(kind, k) == hyper->closed_form_moment(kind, k));
        }
    }

    // no balls: every urn is empty
    auto empty = make_empty_urns(4, 0);
    CHECK(empty->pmf(4) == rat(1));
    CHECK(empty->closed_form_moment(MomentKind::Raw, 3) == rat(64));
    CHECK(empty->closed_form_moment(MomentKind::Factorial, 2) == rat(12));
}

TEST_CASE("cmp-binomial: exact integer-nu path") {
    // nu = 1 must collapse to the plain binomial, exactly
    for (const char* p : {"3/10", "1/2"}) {
        auto cmp = make_cmp_binomial(6, Scalar::parse(p), rat(1));
        auto ref = make_binomial(6, Scalar::parse(p));
        for (int k = 0; k <= 5; ++k)
            for (auto kind : {MomentKind::Raw, MomentKind::Central, MomentKind::Factorial}) {
                CHECK(cmp->closed_form_moment(kind, k).is_exact());
                CHECK(cmp->closed_form_moment(kind, k) == ref->closed_form_moment(kind, k));
            }
        for (int x = 0; x <= 6; ++x) CHECK(cmp->pmf(x) == ref->pmf(x));
    }
    // integer nu != 1 stays exact and matches its own pmf sums
    auto cmp2 = make_cmp_binomial(5, rat(2, 5), rat(2));
    auto truth = oracle::pmf_moments(*cmp2, 5);
    for (int k = 0; k <= 5; ++k) {
        CHECK(cmp2->closed_form_moment(MomentKind::Raw, k).is_exact());
        CHECK(cmp2->closed_form_moment(MomentKind::Raw, k) == truth.raw[k]);
        CHECK(cmp2->closed_form_moment(MomentKind::Factorial, k) == truth.factorial[k]);
    }
    auto cmp0 = make_cmp_binomial(4, rat(1, 3), rat(0));
    auto truth0 = oracle::pmf_moments(*cmp0, 4);
    for (int k = 0; k <= 4; ++k)
        CHECK(cmp0->closed_form_moment(MomentKind::Raw, k) == truth0.raw[k]);
}

TEST_CASE("cmp-binomial: approx path with non-integer nu") {
    auto cmp = make_cmp_binomial(6, Scalar::approx(0.4), Scalar::approx(0.5));
    CHECK_FALSE(cmp->closed_form_moment(MomentKind::Raw, 2).is_exact());
    auto truth = oracle::pmf_moments(*cmp, 4);
    for (int k = 0; k <= 4; ++k) {
        CHECK(scalar_close(cmp->closed_form_moment(MomentKind::Raw, k), truth.raw[k], 1e-9));
        CHECK(scalar_close(cmp->closed_form_moment(MomentKind::Factorial, k), truth.factorial[k], 1e-9));
    }
    // joint expectations feed a valid exchangeable model
    auto model = cmp->as_joint_model();
    CHECK(scalar_close(raw_moment(model, 3), cmp->closed_form_moment(MomentKind::Raw, 3), 1e-9));
}

TEST_CASE("poisson: touchard moments, factorial powers") {
    auto p = make_poisson(rat(1));
    CHECK(p->closed_form_moment(MomentKind::Raw, 3) == rat(5));  // B_3 at lambda=1
    CHECK(p->closed_form_moment(MomentKind::Factorial, 4) == rat(1));
    CHECK_THROWS_AS(p->joint_expectation(1), NotBernoulliSum);
    CHECK_THROWS_AS(p->as_joint_model(), NotBernoulliSum);
    CHECK_FALSE(p->finite_support());

    auto p2 = make_poisson(rat(2));
    CHECK(p2->closed_form_moment(MomentKind::Raw, 2) == rat(6));  // 2 + 4
    CHECK(p2->closed_form_moment(MomentKind::Central, 2) == rat(2));

    // factorial moments round-trip through the stirling transform
    for (const char* lam : {"1/2", "1", "2", "7/3"}) {
        auto pl = make_poisson(Scalar::parse(lam));
        std::vector<Scalar> facts;
        for (int k = 0; k <= 8; ++k) facts.push_back(pl->closed_form_moment(MomentKind::Factorial, k));
        for (int k = 0; k <= 8; ++k)
            CHECK(moments_from_factorial(facts, k) == pl->closed_form_moment(MomentKind::Raw, k));
    }

    CHECK(p2->tail(0) == Scalar(1));
    CHECK(p2->tail(1).to_double() == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("geometric: support starts at one") {
    auto g = make_geometric(rat(1, 2));
    CHECK(g->pmf(1) == rat(1, 2));
    CHECK(g->pmf(0) == rat(0));
    CHECK(g->tail(3) == rat(1, 4));  // (1-p)^{M-1}
    CHECK(g->closed_form_moment(MomentKind::Factorial, 2) == rat(2));
    CHECK(g->closed_form_moment(MomentKind::Raw, 1) == rat(2));
    CHECK_THROWS_AS(g->as_joint_model(), NotBernoulliSum);
    CHECK_THROWS_AS(make_geometric(rat(0)), SpecError);

    auto sure = make_geometric(rat(1));
    CHECK(sure->finite_support());
    CHECK(sure->closed_form_moment(MomentKind::Raw, 3) == rat(1));
}

TEST_CASE("soliton: pmf, telescoped tail, corrected closed form") {
    auto s2 = make_soliton(2);
    CHECK(s2->pmf(1) == rat(1, 2));  // 1/r
    CHECK(s2->pmf(2) == rat(1, 2));

    auto s5 = make_soliton(5);
    CHECK(s5->tail(3) == rat(3, 10));  // 4/5 - 1/2
    CHECK(s5->tail(1) == rat(1));
    CHECK(s5->tail(6) == rat(0));
    CHECK(s5->closed_form_moment(MomentKind::Raw, 1) == Scalar(combinat::harmonic(5)));
    CHECK(s5->closed_form_moment(MomentKind::Factorial, 2) == rat(4));

    // corrected closed form equals direct pmf sums
    for (int r : {2, 3, 5, 9, 17}) {
        auto s = make_soliton(r);
        auto truth = oracle::pmf_moments(*s, 6);
        for (int k = 0; k <= 6; ++k) {
            CHECK(s->closed_form_moment(MomentKind::Raw, k) == truth.raw[k]);
            CHECK(s->closed_form_moment(MomentKind::Factorial, k) == truth.factorial[k]);
        }
    }

    // the printed form disagrees where the paper's typo bites
    CHECK(soliton_printed_factorial_moment(5, 2) == rat(14));
    CHECK(s5->closed_form_moment(MomentKind::Factorial, 2) == rat(4));
    CHECK_THROWS_AS(make_soliton(1), SpecError);
}

TEST_CASE("benford: log pmf and closed moments") {
    auto b = make_benford(10);
    CHECK(b->pmf(1).to_double() == doctest::Approx(std::log10(2.0)).epsilon(1e-14));
    CHECK(b->tail(1) == Scalar(1));
    CHECK(b->tail(5).to_double() == doctest::Approx(1.0 - std::log10(5.0)).epsilon(1e-14));
    CHECK_FALSE(b->closed_form_moment(MomentKind::Raw, 1).is_exact());
    // first moment: 9 - log10(9!)
    double mean = b->closed_form_moment(MomentKind::Raw, 1).to_double();
    CHECK(mean == doctest::Approx(9.0 - std::log10(362880.0)).epsilon(1e-12));
    auto truth = oracle::pmf_moments(*b, 4);
    for (int k = 0; k <= 4; ++k)
        CHECK(scalar_close(b->closed_form_moment(MomentKind::Raw, k), truth.raw[k], 1e-12));

    auto b2 = make_benford(2);
    CHECK(b2->pmf(1).to_double() == doctest::Approx(1.0));
}

TEST_CASE("pmf normalization across the catalog") {
    std::vector<DistPtr> dists{
        make_binomial(5, rat(1, 3)),
        make_poisson_binomial({rat(1, 2), rat(1, 5), rat(3, 4)}),
        make_hypergeometric(8, 3, 4),
        make_cmp_binomial(5, rat(1, 2), rat(2)),
        make_empty_urns(4, 3),
        make_matching(5),
        make_soliton(7),
        make_benford(10),
    };
    for (const auto& d : dists) {
        Scalar total(0);
        for (long x = d->support_min(); x <= d->support_max(); ++x) total += d->pmf(x);
        if (total.is_exact())
            CHECK(total == Scalar(1));
        else
            CHECK(total.to_double() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed forms equal the engine on every bernoulli-sum spec") {
    std::vector<DistPtr> dists{
        make_binomial(6, rat(2, 5)),
        make_poisson_binomial({rat(1, 2), rat(1, 5), rat(3, 4), rat(1, 7)}),
        make_hypergeometric(8, 5, 4),
        make_cmp_binomial(5, rat(1, 2), rat(3)),
        make_empty_urns(4, 3),
        make_matching(6),
    };
    for (const auto& d : dists) {
        auto model = d->as_joint_model();
        for (int k = 0; k <= 6; ++k) {
            CHECK(d->closed_form_moment(MomentKind::Raw, k) == raw_moment(model, k));
            CHECK(d->closed_form_moment(MomentKind::Central, k) == central_moment(model, k));
            CHECK(d->closed_form_moment(MomentKind::Factorial, k) == factorial_moment(model, k));
        }
    }
}

TEST_CASE("dist specs parse from JSON") {
    auto b = parse_dist(nlohmann::json{{"dist", "binomial"}, {"n", 10}, {"p", "1/2"}});
    CHECK(b->name() == "binomial");
    CHECK(b->closed_form_moment(MomentKind::Raw, 1) == rat(5));
    CHECK(b->closed_form_moment(MomentKind::Raw, 1).is_exact());

    // float parameters force the approx path
    auto bf = parse_dist(nlohmann::json{{"dist", "binomial"}, {"n", 10}, {"p", 0.5}});
    CHECK_FALSE(bf->closed_form_moment(MomentKind::Raw, 1).is_exact());

    auto pb = parse_dist(nlohmann::json::parse(R"({"dist":"poisson-binomial","p":["1/2","1/3"]})"));
    CHECK(pb->trial_count() == 2);

    auto urns = parse_dist(nlohmann::json::parse(R"({"dist":"empty_urns","n":3,"balls":2})"));
    CHECK(urns->name() == "empty-urns");

    CHECK_THROWS_AS(parse_dist(nlohmann::json{{"dist", "nope"}}), SpecError);
    CHECK_THROWS_AS(parse_dist(nlohmann::json{{"dist", "binomial"}, {"n", 3}}), SpecError);
    CHECK_THROWS_AS(parse_dist(nlohmann::json{{"dist", "binomial"}, {"n", 3}, {"p", "3/2"}}), SpecError);
}

TEST_CASE("closed form report carries provenance and expected factorial") {
    auto rep = closed_form_report(*make_binomial(2, rat(1, 2)), MomentKind::ExpectedFactorial, 0);
    CHECK(rep.values[0] == rat(5, 4));
    CHECK(rep.provenance == "closed_form");
    auto central = closed_form_report(*make_matching(4), MomentKind::Central, 3);
    CHECK(central.mu.has_value());
    CHECK(*central.mu == rat(1));
}
