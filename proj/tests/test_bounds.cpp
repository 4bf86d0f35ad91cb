#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qbai/bounds.hpp"
#include "qbai/rng.hpp"

using namespace qbai;

TEST_CASE("adversary bound frozen values") {
    BanditInstance inst = make_instance({0.6, 0.4});
    AdversaryBound b = adversary_bound(inst, 0.05, 0.25);
    CHECK(b.intermediate == doctest::Approx(0.7385419721628703).epsilon(1e-12));
    CHECK(b.simplified == doctest::Approx(0.5607852402286712).epsilon(1e-12));
}

TEST_CASE("adversary bound input validation") {
    BanditInstance inst = make_instance({0.6, 0.4});
    CHECK_THROWS_AS(adversary_bound(inst, 0.5, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(adversary_bound(inst, 0.05, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(adversary_bound(inst, 0.05, 0.45), std::invalid_argument);
    CHECK_THROWS_AS(adversary_bound(make_instance({0.9, 0.05}), 0.05, 0.1),
                    std::invalid_argument);
}

TEST_CASE("adversary bound structural properties") {
    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        int n = 2 + static_cast<int>(rng.uniform_int(6));
        std::vector<double> p(n);
        p[0] = rng.uniform(0.55, 0.8);
        for (int i = 1; i < n; ++i) p[i] = rng.uniform(0.2, p[0] - 0.05);
        BanditInstance inst = make_instance(p);
        AdversaryBound b = adversary_bound(inst, 0.05, 0.15);
        CHECK(b.intermediate > 0.0);

        AdversaryBound loose = adversary_bound(inst, 0.2, 0.15);
        CHECK(loose.intermediate <= b.intermediate);
        CHECK(loose.simplified <= b.simplified);

        std::vector<double> perm(p.rbegin(), p.rend());
        AdversaryBound bp = adversary_bound(make_instance(perm), 0.05, 0.15);
        CHECK(bp.intermediate == doctest::Approx(b.intermediate).epsilon(1e-12));
    }

    AdversaryBound near_half =
        adversary_bound(make_instance({0.6, 0.4}), 0.499999, 0.25);
    CHECK(near_half.intermediate < 1e-4);
}

TEST_CASE("hard family construction") {
    BanditInstance base = make_instance({0.6, 0.4, 0.3});
    HardFamily fam = make_hard_family(base, 0.25);
    CHECK(fam.eta == doctest::Approx(0.25 * 0.2 / 2.0));
    REQUIRE(fam.variants.size() == 2);
    for (const BanditInstance& v : fam.variants) {
        CHECK(v.best != base.best);
        CHECK(v.p[v.best] == doctest::Approx(0.6 + fam.eta));
    }
    CHECK(fam.variants[0].best == 1);
    CHECK(fam.variants[1].best == 2);
}

TEST_CASE("overlap inequality") {
    OverlapCheck eq = check_overlap_inequality(0.3, 0.3, 0.3);
    CHECK(eq.lhs == doctest::Approx(0.0));
    CHECK(eq.holds);

    // Equality witness: both biases at the floor.
    double p = 0.2;
    OverlapCheck edge = check_overlap_inequality(p, p + 1e-9, p);
    CHECK(std::abs(edge.lhs - edge.rhs) <= 1e-9);
    CHECK(edge.holds);

    Rng rng(31);
    for (int t = 0; t < 2000; ++t) {
        double floor = rng.uniform(0.01, 0.5);
        double p1 = rng.uniform(floor, 1.0 - floor);
        double p2 = rng.uniform(floor, 1.0 - floor);
        CHECK(check_overlap_inequality(p1, p2, floor).holds);
    }

    CHECK_THROWS_AS(check_overlap_inequality(0.3, 0.3, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(check_overlap_inequality(0.05, 0.3, 0.1), std::invalid_argument);
}

TEST_CASE("bound versus modeled cost") {
    BanditInstance inst = make_instance({0.6, 0.4});
    BoundReport r = bound_vs_model(inst, 0.05, 0.25, 100.0);
    CHECK(r.lower_bound == doctest::Approx(0.7385419721628703));
    CHECK(r.ratio == doctest::Approx(100.0 / r.lower_bound));
    CHECK(r.consistent);

    BoundReport low = bound_vs_model(inst, 0.05, 0.25, 0.1);
    CHECK_FALSE(low.consistent);

    CHECK_THROWS_AS(bound_vs_model(inst, 0.05, 0.25, 0.0), std::invalid_argument);
}
