#include "qbai/bai.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbai/vta.hpp"

namespace qbai {

int locate_round_cap(double delta2_floor) {
    if (delta2_floor <= 0.0 || delta2_floor > 1.0) {
        throw std::invalid_argument("locate_round_cap: delta2_floor in (0,1]");
    }
    double rounds = std::ceil(std::log(1.0 / delta2_floor) / std::log(5.0 / 3.0)) + 3.0;
    return 4 * static_cast<int>(rounds);
}

Interval shrink(const BanditInstance& instance, int k, const Interval& interval,
                double delta, Rng& rng, ShrinkRecord* record, EstimateMode mode) {
    if (k != 1 && k != 2) throw std::invalid_argument("shrink: k must be 1 or 2");
    if (interval.width() <= 0.0) throw std::invalid_argument("shrink: degenerate interval");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("shrink: delta in (0,1)");

    const double a = interval.lo;
    const double b = interval.hi;
    const double eps = interval.width() / 5.0;
    const double d = delta / 2.0;

    BanditInstance extended = append_perfect_arm(instance);
    auto run1 = run_vta_cached(extended, a + eps, a + 3.0 * eps, 0.01 * d);
    auto run2 = run_vta_cached(extended, a + 2.0 * eps, a + 4.0 * eps, 0.01 * d);

    QueryLedger ledger;
    ledger.merge(run1->ledger);
    ledger.merge(run2->ledger);
    EstimateResult e1 = estimate(*run1, 0.1, d, mode, rng);
    EstimateResult e2 = estimate(*run2, 0.1, d, mode, rng);
    ledger.merge(e1.ledger);
    ledger.merge(e2.ledger);

    const double threshold = (k + 0.5) / (instance.n_arms() + 1);
    const bool b1 = e1.r > threshold;
    const bool b2 = e2.r > threshold;

    Interval out;
    if (!b1 && !b2) {
        out = {a, a + 3.0 * eps};
    } else if (b1 && b2) {
        out = {a + 2.0 * eps, b};
    } else {
        out = {a + eps, a + 4.0 * eps};
    }

    if (record) {
        record->k = k;
        record->input = interval;
        record->output = out;
        record->r1 = e1.r;
        record->r2 = e2.r;
        record->b1 = b1;
        record->b2 = b2;
        record->delta = delta;
        record->ledger = ledger;
    }
    return out;
}

LocateResult locate(const BanditInstance& instance, double delta, Rng& rng,
                    const LocateOptions& options) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("locate: delta in (0,1)");

    LocateResult result;
    result.i1 = {0.0, 1.0};
    result.i2 = {0.0, 1.0};
    double d = delta / 8.0;
    const int cap = locate_round_cap(options.delta2_floor);

    while (result.i1.lo - result.i2.hi < 2.0 * result.i1.width()) {
        if (options.width_break > 0.0 && result.i1.width() <= options.width_break) {
            result.width_break = true;
            break;
        }
        if (result.rounds >= cap) {
            throw std::runtime_error("locate: separation not achieved");
        }
        ShrinkRecord rec1, rec2;
        result.i1 = shrink(instance, 1, result.i1, d, rng, &rec1, options.mode);
        result.i2 = shrink(instance, 2, result.i2, d, rng, &rec2, options.mode);
        result.ledger.merge(rec1.ledger);
        result.ledger.merge(rec2.ledger);
        result.transcript.push_back(std::move(rec1));
        result.transcript.push_back(std::move(rec2));
        d /= 2.0;
        ++result.rounds;
    }
    return result;
}

namespace {

BaiResult finish_with_amplify(const BanditInstance& instance, double l2, double l1,
                              double d, Rng& rng, LocateResult&& loc) {
    auto run = run_vta_cached(instance, l2, l1, 0.01 * d);
    AmplifyResult amp = amplify(*run, d, rng);

    BaiResult result;
    result.arm = amp.arm;
    result.i1 = loc.i1;
    result.i2 = loc.i2;
    result.l1 = l1;
    result.l2 = l2;
    result.transcript = std::move(loc.transcript);
    result.ledger.merge(loc.ledger);
    result.ledger.merge(run->ledger);
    result.ledger.merge(amp.ledger);
    return result;
}

}  // namespace

BaiResult best_arm(const BanditInstance& instance, double delta, Rng& rng,
                   const LocateOptions& options) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("best_arm: delta in (0,1)");
    const double d = delta / 2.0;
    LocateResult loc = locate(instance, d, rng, options);
    return finish_with_amplify(instance, loc.i2.hi, loc.i1.lo, d, rng, std::move(loc));
}

BaiResult pac_arm(const BanditInstance& instance, double eps_pac, double delta,
                  Rng& rng, LocateOptions options) {
    if (eps_pac <= 0.0 || eps_pac >= 1.0) {
        throw std::invalid_argument("pac_arm: eps_pac in (0,1)");
    }
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("pac_arm: delta in (0,1)");

    const double d = delta / 2.0;
    options.width_break = eps_pac / 4.0;
    LocateResult loc = locate(instance, d, rng, options);

    double l1 = loc.i1.lo;
    double l2 = loc.i2.hi;
    if (loc.width_break) {
        // Any arm is eps_pac-optimal once l1 is this small; keep the
        // thresholds valid instead of letting l2 hit zero.
        l1 = std::max(l1, eps_pac / 8.0);
        l2 = std::max(l1 - eps_pac / 4.0, l1 / 2.0);
    }
    return finish_with_amplify(instance, l2, l1, d, rng, std::move(loc));
}

std::optional<BaiResult> best_arm_capped(const BanditInstance& instance,
                                         double delta, double budget, Rng& rng,
                                         const LocateOptions& options) {
    try {
        BaiResult result = best_arm(instance, delta, rng, options);
        if (result.ledger.modeled_cost > budget) return std::nullopt;
        return result;
    } catch (const std::runtime_error&) {
        return std::nullopt;  // circuit breaker counts as a blank vote
    }
}

double kl_half_vs(double delta) {
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("kl_half_vs: delta in (0,1)");
    return 0.5 * std::log(0.5 / delta) + 0.5 * std::log(0.5 / (1.0 - delta));
}

FixedBudgetResult fixed_budget(const BanditInstance& instance, double T,
                               const std::map<double, double>& tc_table, Rng& rng) {
    if (tc_table.empty()) throw std::invalid_argument("fixed_budget: empty tc_table");

    double best_score = 0.0;
    double delta_star = 0.0;
    double tc_star = 0.0;
    bool found = false;
    for (const auto& [delta, tc] : tc_table) {
        if (tc <= 0.0) throw std::invalid_argument("fixed_budget: Tc must be positive");
        int m = static_cast<int>(std::floor(T / tc));
        if (m < 1) continue;
        double score = std::exp(-m * kl_half_vs(delta));
        if (!found || score < best_score) {
            found = true;
            best_score = score;
            delta_star = delta;
            tc_star = tc;
        }
    }
    if (!found) throw std::runtime_error("fixed_budget: budget too small");

    FixedBudgetResult result;
    result.delta_star = delta_star;
    const int m = static_cast<int>(std::floor(T / tc_star));
    std::vector<int> votes(instance.n_arms(), 0);
    for (int run = 0; run < m; ++run) {
        auto outcome = best_arm_capped(instance, delta_star, tc_star, rng);
        if (outcome) {
            result.ledger.merge(outcome->ledger);
            ++votes[outcome->arm];
            ++result.votes_cast;
        } else {
            ++result.votes_blank;
        }
    }
    if (result.votes_cast == 0) throw std::runtime_error("fixed_budget: no decision");

    int best = 0;
    for (int i = 1; i < instance.n_arms(); ++i) {
        if (votes[i] > votes[best]) best = i;
    }
    result.arm = best;
    return result;
}

double calibrate_tc(const BanditInstance& instance, double delta, int trials,
                    Rng& rng) {
    if (trials < 1) throw std::invalid_argument("calibrate_tc: trials >= 1");
    double max_cost = 0.0;
    for (int t = 0; t < trials; ++t) {
        BaiResult result = best_arm(instance, delta, rng);
        max_cost = std::max(max_cost, result.ledger.modeled_cost);
    }
    return max_cost;
}

}  // namespace qbai
