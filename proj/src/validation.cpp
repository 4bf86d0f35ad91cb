#include "qbai/validation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qbai/amp_est.hpp"
#include "qbai/bai.hpp"
#include "qbai/bounds.hpp"
#include "qbai/gate_sim.hpp"
#include "qbai/oracle.hpp"
#include "qbai/rng.hpp"
#include "qbai/vta.hpp"

namespace qbai {

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

SuiteResult sandwich_suite(Rng& rng, int instances) {
    SuiteResult suite{"sandwich", true, ""};
    for (int trial = 0; trial < instances; ++trial) {
        BanditInstance inst = random_instance(rng, 8);
        double l1 = rng.uniform(0.15, 0.85);
        double width = rng.uniform(0.05, std::min(l1 - 0.01, 0.5));
        double alpha = rng.uniform(0.01, 0.3);
        VtaParams params = VtaParams::make(l1 - width, l1, alpha, inst.n_arms());
        VtaRun run = run_vta(inst, params);
        double margin = 2.0 * alpha / inst.n_arms() + 1e-10;
        double gap = std::abs(run.profile.psucc - run.profile.psucc_prime);
        if (gap > margin) {
            suite.passed = false;
            suite.detail = "sandwich violated at trial " + std::to_string(trial);
            return suite;
        }
    }
    suite.detail = std::to_string(instances) + " instances";
    return suite;
}

SuiteResult gae_suite(Rng& rng, int draws) {
    SuiteResult suite{"gae-threshold", true, ""};
    int checked = 0;
    for (int trial = 0; trial < draws; ++trial) {
        double p = rng.uniform(0.01, 0.99);
        double eps = rng.uniform(0.02, 0.3);
        double delta = rng.uniform(0.01, 0.5);
        double l = rng.uniform(0.02, 0.98);
        GaeOutcome g = gae(p, eps, delta, l);
        if (p >= l - eps) {
            ++checked;
            if (g.beta1 > delta) {
                suite.passed = false;
                suite.detail = "beta1 > delta at trial " + std::to_string(trial);
                return suite;
            }
        } else if (p < l - 2.0 * eps) {
            ++checked;
            if (g.beta0 > delta) {
                suite.passed = false;
                suite.detail = "beta0 > delta at trial " + std::to_string(trial);
                return suite;
            }
        }
    }
    suite.detail = std::to_string(checked) + " guarded draws";
    return suite;
}

SuiteResult overlap_suite(Rng& rng, int triples) {
    SuiteResult suite{"overlap-inequality", true, ""};
    for (int trial = 0; trial < triples; ++trial) {
        double floor = rng.uniform(0.01, 0.5);
        double p1 = rng.uniform(floor, 1.0 - floor);
        double p2 = rng.uniform(floor, 1.0 - floor);
        OverlapCheck check = check_overlap_inequality(p1, p2, floor);
        if (!check.holds) {
            suite.passed = false;
            suite.detail = "violation at trial " + std::to_string(trial);
            return suite;
        }
    }
    OverlapCheck witness = check_overlap_inequality(0.3, 0.3, 0.3);
    if (std::abs(witness.lhs - witness.rhs) > 1e-12) {
        suite.passed = false;
        suite.detail = "equality witness failed";
        return suite;
    }
    suite.detail = std::to_string(triples) + " triples";
    return suite;
}

SuiteResult shrink_suite(Rng& rng, int trials) {
    SuiteResult suite{"shrink-containment", true, ""};
    const double delta = 0.2;
    std::vector<BanditInstance> instances = {
        make_instance({0.9, 0.1}),
        make_instance({0.7, 0.5, 0.3}),
    };
    for (const auto& inst : instances) {
        std::vector<double> sorted = inst.p;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (int k = 1; k <= 2; ++k) {
            int hits = 0;
            for (int t = 0; t < trials; ++t) {
                Interval j = shrink(inst, k, {0.0, 1.0}, delta, rng);
                double pk = sorted[k - 1];
                if (j.lo <= pk && pk <= j.hi) ++hits;
            }
            double need = (1.0 - delta) * trials -
                          3.0 * std::sqrt(trials * delta * (1.0 - delta));
            if (hits < need) {
                suite.passed = false;
                suite.detail = "containment below threshold for k=" + std::to_string(k);
                return suite;
            }
        }
    }
    suite.detail = std::to_string(trials) + " trials x 2 instances x 2 ranks";
    return suite;
}

SuiteResult backend_suite() {
    SuiteResult suite{"backend-agreement", true, ""};
    struct Config {
        std::vector<double> p;
        double l2, l1, alpha;
        GateRegisterWidths widths;
    };
    std::vector<Config> configs = {
        {{0.8, 0.2}, 0.4, 0.7, 0.1, {2, 1}},
        {{0.6, 0.3, 0.1}, 0.3, 0.65, 0.2, {2, 1}},
        {{0.9, 0.5}, 0.45, 0.8, 0.05, {3, 1}},
        {{0.7}, 0.25, 0.8, 0.1, {2, 3}},
    };
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const Config& c = configs[i];
        BanditInstance inst = make_instance(c.p);
        GateState gate = gate_level_run(inst, c.l2, c.l1, c.alpha, c.widths);
        VtaParams params = VtaParams::make(c.l2, c.l1, c.alpha, inst.n_arms());
        VtaRun run = run_vta(inst, params, c.widths.qpe_config());
        double tv = total_variation(gate_joint_distribution(gate),
                                    branch_joint_distribution(run));
        if (tv > 1e-9) {
            suite.passed = false;
            suite.detail = "TV " + std::to_string(tv) + " at config " + std::to_string(i);
            return suite;
        }
    }
    suite.detail = std::to_string(configs.size()) + " gate-level configs";
    return suite;
}

}  // namespace

std::vector<SuiteResult> run_validation(ValidationLevel level, std::uint64_t seed) {
    Rng rng = Rng::stream(seed, 0);
    const bool full = level == ValidationLevel::full;

    std::vector<SuiteResult> suites;
    suites.push_back(sandwich_suite(rng, full ? 100 : 40));
    suites.push_back(gae_suite(rng, full ? 5000 : 2000));
    suites.push_back(overlap_suite(rng, full ? 100000 : 10000));
    suites.push_back(shrink_suite(rng, full ? 200 : 80));
    if (full) suites.push_back(backend_suite());
    return suites;
}

}  // namespace qbai
