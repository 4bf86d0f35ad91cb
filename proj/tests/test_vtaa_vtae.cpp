#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbai/rng.hpp"
#include "qbai/vtaa_vtae.hpp"

using namespace qbai;

TEST_CASE("cost model closed forms") {
    VtaProfile prof;
    prof.t = {10, 100, 1000};
    prof.w = {0.0, 0.0, 1.0};
    prof.t_avg = 1000.0;
    prof.psucc = 1.0;
    CostModel m = cost_model(prof, 0.1, 0.25);
    double log_t = std::log2(1000.0);
    CHECK(m.Q == doctest::Approx(2.0 * 1000.0 * log_t));
    CHECK(m.r_rep == 3);
    CHECK(m.amplify_cost == doctest::Approx(3.0 * m.Q));
    CHECK(m.estimate_cost ==
          doctest::Approx(m.Q / 0.1 * log_t * log_t *
                          std::log2(std::log2(1000.0 / 0.25))));

    prof.psucc = 0.5;
    CostModel h = cost_model(prof, 0.1, 0.25);
    double second_full = h.Q - 1000.0 * log_t;
    double second_unit = m.Q - 1000.0 * log_t;
    CHECK(second_full == doctest::Approx(second_unit * std::sqrt(2.0)));

    prof.psucc = 0.0;
    CHECK_THROWS_AS(cost_model(prof, 0.1, 0.25), std::invalid_argument);
}

TEST_CASE("cost model dominance on real runs") {
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> p = {rng.uniform(0.55, 0.95), rng.uniform(0.05, 0.45)};
        BanditInstance inst = make_instance(p);
        VtaParams params = VtaParams::make(0.45, 0.55, 0.1, 2);
        VtaRun run = run_vta(inst, params);
        if (run.profile.psucc <= 0.0) continue;
        CostModel m = cost_model(run.profile, 0.2, 0.1);
        CHECK(m.Q >= static_cast<double>(run.profile.t.back()));
        CHECK(m.Q >= run.profile.t_avg / std::sqrt(run.profile.psucc));
    }
}

TEST_CASE("amplify on a single arm always returns it") {
    BanditInstance inst = make_instance({0.9});
    auto run = run_vta_cached(inst, 0.4, 0.6, 0.01 * 0.1);
    Rng rng(1);
    for (int t = 0; t < 20; ++t) CHECK(amplify(*run, 0.1, rng).arm == 0);
}

TEST_CASE("amplify lands in s_mr with high probability") {
    BanditInstance inst = make_instance({0.9, 0.2, 0.1});
    const double delta = 0.1;
    auto run = run_vta_cached(inst, 0.4, 0.8, 0.01 * delta);
    auto mr = run->sets.s_mr();
    int hits = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(33, static_cast<std::uint64_t>(t));
        int arm = amplify(*run, delta, rng).arm;
        if (std::find(mr.begin(), mr.end(), arm) != mr.end()) ++hits;
    }
    double need = (1.0 - delta) * trials -
                  3.0 * std::sqrt(trials * delta * (1.0 - delta));
    CHECK(hits >= need);
}

TEST_CASE("amplify with empty success subspace errors") {
    BanditInstance inst = make_instance({0.0});
    VtaParams params = VtaParams::make(0.2, 0.6, 0.1, 1);
    VtaRun run = run_vta(inst, params);
    REQUIRE(run.profile.psucc == 0.0);
    Rng rng(1);
    CHECK_THROWS_AS(amplify(run, 0.1, rng), std::runtime_error);
}

TEST_CASE("amplify charges the modeled cost and raw calls") {
    BanditInstance inst = make_instance({0.9, 0.1});
    auto run = run_vta_cached(inst, 0.4, 0.6, 0.001);
    Rng rng(4);
    AmplifyResult r = amplify(*run, 0.1, rng);
    CostModel m = cost_model(run->profile, 1.0, 0.1);
    CHECK(r.ledger.modeled_cost == doctest::Approx(m.amplify_cost));
    CHECK(r.ledger.oracle_calls == run->profile.t.back());
}

TEST_CASE("estimate honest mode satisfies the sandwich with high probability") {
    BanditInstance inst = make_instance({0.9, 0.1});
    const double eps = 0.1, delta = 0.1;
    auto run = run_vta_cached(inst, 0.4, 0.6, 0.01 * delta);
    const double n = inst.n_arms();
    int ok = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::stream(77, static_cast<std::uint64_t>(t));
        double r = estimate(*run, eps, delta, EstimateMode::honest, rng).r;
        double lo = (1.0 - eps) * (run->profile.psucc_prime - 0.1 / n);
        double hi = (1.0 + eps) * (run->profile.psucc_prime + 0.1 / n);
        if (r > lo && r < hi) ++ok;
    }
    double need = (1.0 - delta) * trials -
                  3.0 * std::sqrt(trials * delta * (1.0 - delta));
    CHECK(ok >= need);
}

TEST_CASE("estimate degenerate and adversarial modes") {
    BanditInstance inst = make_instance({0.9, 0.1});
    auto run = run_vta_cached(inst, 0.4, 0.6, 0.001);
    Rng rng(2);
    CHECK(estimate(*run, 0.0, 0.0, EstimateMode::honest, rng).r ==
          doctest::Approx(run->profile.psucc));

    const double n = inst.n_arms();
    CHECK(estimate(*run, 0.1, 0.1, EstimateMode::adversarial_high, rng).r ==
          doctest::Approx(1.1 * (run->profile.psucc_prime + 0.1 / n)));
    CHECK(estimate(*run, 0.1, 0.1, EstimateMode::adversarial_low, rng).r ==
          doctest::Approx(0.9 * (run->profile.psucc_prime - 0.1 / n)));
}

TEST_CASE("fixed seeds reproduce amplify and estimate exactly") {
    BanditInstance inst = make_instance({0.9, 0.1});
    auto run = run_vta_cached(inst, 0.4, 0.6, 0.001);
    Rng a(123), b(123);
    CHECK(amplify(*run, 0.1, a).arm == amplify(*run, 0.1, b).arm);
    CHECK(estimate(*run, 0.1, 0.1, EstimateMode::honest, a).r ==
          estimate(*run, 0.1, 0.1, EstimateMode::honest, b).r);
}
