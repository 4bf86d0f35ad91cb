#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbai/rng.hpp"
#include "qbai/vta.hpp"

using namespace qbai;

namespace {

BanditInstance random_instance(Rng& rng, int n_max) {
    for (;;) {
        int n = 1 + static_cast<int>(rng.uniform_int(n_max));
        std::vector<double> p(n);
        for (double& v : p) v = rng.uniform(0.02, 0.98);
        double top = *std::max_element(p.begin(), p.end());
        if (std::count(p.begin(), p.end(), top) == 1) return make_instance(p);
    }
}

}  // namespace

TEST_CASE("VtaParams derivation and validation") {
    VtaParams params = VtaParams::make(0.4, 0.6, 0.1, 2);
    CHECK(params.delta_width == doctest::Approx(0.2));
    CHECK(params.m == 5);  // ceil(log2(5)) + 2
    CHECK(params.a == doctest::Approx(0.1 / (2.0 * 5 * std::pow(2.0, 1.5))));
    CHECK(params.m >= 3);
    CHECK(params.a < params.alpha);

    CHECK_THROWS_AS(VtaParams::make(0.6, 0.4, 0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(VtaParams::make(0.0, 0.4, 0.1, 2), std::invalid_argument);
    CHECK_THROWS_AS(VtaParams::make(0.2, 0.4, 0.0, 2), std::invalid_argument);
}

TEST_CASE("arm_sets boundary classification") {
    VtaParams params = VtaParams::make(0.2, 0.6, 0.1, 3);
    const double d = params.delta_width;
    BanditInstance inst = make_instance({0.6, 0.6 - d / 4.0, 0.2});
    ArmSets sets = arm_sets(inst, params);
    CHECK(sets.s_right == std::vector<int>{0});
    CHECK(sets.s_mid == std::vector<int>{1});
    CHECK(sets.s_left == std::vector<int>{2});
    CHECK(sets.s_mr() == std::vector<int>{1, 0});
}

TEST_CASE("single surviving arm keeps the flag") {
    VtaParams params = VtaParams::make(0.4, 0.6, 0.1, 1);
    VtaRun run = run_vta(make_instance({0.9}), params);
    CHECK(run.profile.psucc >= 1.0 - 2.0 * params.alpha);
    double w_last = run.profile.w.back();
    double margin = 2.0 * params.m * params.a;
    CHECK(w_last >= 1.0 - 2.0 * margin * margin);
}

TEST_CASE("two-arm split instance halves the success mass") {
    VtaParams params = VtaParams::make(0.4, 0.6, 0.1, 2);
    VtaRun run = run_vta(make_instance({0.9, 0.1}), params);
    CHECK(std::abs(run.profile.psucc - 0.5) <= 2.0 * params.alpha / 2.0);
}

TEST_CASE("all arms far below the threshold leave almost no flag mass") {
    VtaParams params = VtaParams::make(0.5, 0.8, 0.05, 3);
    VtaRun run = run_vta(make_instance({0.2, 0.1, 0.05}), params);
    CHECK(run.profile.psucc <= 2.0 * params.alpha / 3.0);
}

TEST_CASE("closed-form sandwich on random instances") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        BanditInstance inst = random_instance(rng, 8);
        double l1 = rng.uniform(0.15, 0.85);
        double width = rng.uniform(0.05, std::min(l1 - 0.01, 0.5));
        double alpha = rng.uniform(0.01, 0.3);
        VtaParams params = VtaParams::make(l1 - width, l1, alpha, inst.n_arms());
        VtaRun run = run_vta(inst, params);
        CHECK(std::abs(run.profile.psucc - run.profile.psucc_prime) <=
              2.0 * alpha / inst.n_arms() + 1e-10);
    }
}

TEST_CASE("stopping profile bookkeeping") {
    VtaParams params = VtaParams::make(0.3, 0.7, 0.1, 4);
    VtaRun run = run_vta(make_instance({0.8, 0.5, 0.3, 0.1}), params);
    const VtaProfile& prof = run.profile;

    REQUIRE(static_cast<int>(prof.t.size()) == params.m + 1);
    for (int j = 1; j < params.m; ++j) CHECK(prof.t[j] > prof.t[j - 1]);
    CHECK(prof.t[params.m] == prof.t[params.m - 1]);

    double wsum = 0.0;
    for (double w : prof.w) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(prof.t_avg <= static_cast<double>(prof.t.back()) + 1e-9);

    CHECK(run.ledger.oracle_calls == prof.t.back());
    CHECK(run.ledger.breakdown_total() == run.ledger.oracle_calls);
}

TEST_CASE("flag semantics per arm partition") {
    VtaParams params = VtaParams::make(0.3, 0.7, 0.2, 3);
    BanditInstance inst = make_instance({0.9, 0.7, 0.1});
    VtaRun run = run_vta(inst, params);
    const double n = inst.n_arms();
    const double margin = 2.0 * params.m * params.a;

    std::vector<double> flag1(inst.n_arms(), 0.0), flag0(inst.n_arms(), 0.0);
    for (const auto& c : run.state.components) {
        (c.flag == 1 ? flag1 : flag0)[c.arm] += std::norm(c.amp) * n;
    }
    for (int i : run.sets.s_right) CHECK(flag1[i] >= 1.0 - margin * margin);
    for (int i : run.sets.s_left) CHECK(flag0[i] >= 1.0 - margin * margin);
}

TEST_CASE("run_vta is deterministic and cached runs are shared") {
    BanditInstance inst = make_instance({0.8, 0.3});
    VtaParams params = VtaParams::make(0.4, 0.7, 0.1, 2);
    VtaRun a = run_vta(inst, params);
    VtaRun b = run_vta(inst, params);
    REQUIRE(a.state.components.size() == b.state.components.size());
    for (std::size_t i = 0; i < a.state.components.size(); ++i) {
        CHECK(a.state.components[i].amp == b.state.components[i].amp);
    }
    auto c1 = run_vta_cached(inst, 0.4, 0.7, 0.1);
    auto c2 = run_vta_cached(inst, 0.4, 0.7, 0.1);
    CHECK(c1.get() == c2.get());
}

// Scaling constants fit once on this fixed-seed family and frozen.
TEST_CASE("stopping-time scaling stays under the frozen constants") {
    const double kC = 5500.0;
    const double kCprime = 2.5e7;
    Rng rng(42);
    for (int t = 0; t < 60; ++t) {
        BanditInstance inst = random_instance(rng, 16);
        double l1 = rng.uniform(0.15, 0.85);
        double width = rng.uniform(0.05, std::min(l1 - 0.01, 0.5));
        double alpha = rng.uniform(0.001, 0.3);
        VtaParams params = VtaParams::make(l1 - width, l1, alpha, inst.n_arms());
        VtaRun run = run_vta(inst, params);

        double la = std::log2(1.0 / params.a);
        CHECK(static_cast<double>(run.profile.t.back()) <=
              kC * la / params.delta_width);

        double rhs = static_cast<double>(run.sets.s_right.size()) /
                     (params.delta_width * params.delta_width);
        for (int i : run.sets.s_lm()) {
            rhs += 1.0 / ((l1 - inst.p[i]) * (l1 - inst.p[i]));
        }
        rhs = rhs / inst.n_arms() * la * la;
        CHECK(run.profile.t_avg * run.profile.t_avg <= kCprime * rhs);
    }
}
