#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qbai/ledger.hpp"
#include "qbai/oracle.hpp"
#include "qbai/rng.hpp"
#include "qbai/vtaa_vtae.hpp"

namespace qbai {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
};

// One Shrink invocation on I_k: both estimator readouts, both threshold
// bits and the confidence budget spent.
struct ShrinkRecord {
    int k = 0;
    Interval input;
    Interval output;
    double r1 = 0.0, r2 = 0.0;
    bool b1 = false, b2 = false;
    double delta = 0.0;
    QueryLedger ledger;
};

struct LocateResult {
    Interval i1;
    Interval i2;
    int rounds = 0;
    bool width_break = false;  // pac variant only: |I1| crossed the eps threshold
    std::vector<ShrinkRecord> transcript;
    QueryLedger ledger;
};

struct BaiResult {
    int arm = -1;
    QueryLedger ledger;
    std::vector<ShrinkRecord> transcript;
    Interval i1;
    Interval i2;
    double l1 = 0.0, l2 = 0.0;
};

struct LocateOptions {
    double delta2_floor = 1e-6;  // sets the round-count circuit breaker
    double width_break = 0.0;    // stop once |I1| <= this (0 disables)
    EstimateMode mode = EstimateMode::honest;
};

int locate_round_cap(double delta2_floor);

Interval shrink(const BanditInstance& instance, int k, const Interval& interval,
                double delta, Rng& rng, ShrinkRecord* record = nullptr,
                EstimateMode mode = EstimateMode::honest);

LocateResult locate(const BanditInstance& instance, double delta, Rng& rng,
                    const LocateOptions& options = {});

BaiResult best_arm(const BanditInstance& instance, double delta, Rng& rng,
                   const LocateOptions& options = {});

BaiResult pac_arm(const BanditInstance& instance, double eps_pac, double delta,
                  Rng& rng, LocateOptions options = {});

// best_arm that reports no decision when the modeled cost exceeds `budget`
// or the locate loop trips its circuit breaker.
std::optional<BaiResult> best_arm_capped(const BanditInstance& instance,
                                         double delta, double budget, Rng& rng,
                                         const LocateOptions& options = {});

// Majority vote over floor(T / Tc(delta*)) capped runs, with delta* chosen
// from tc_table to minimize the voting failure bound exp(-m D(1/2 || delta)).
struct FixedBudgetResult {
    int arm = -1;
    double delta_star = 0.0;
    int votes_cast = 0;
    int votes_blank = 0;
    QueryLedger ledger;
};

FixedBudgetResult fixed_budget(const BanditInstance& instance, double T,
                               const std::map<double, double>& tc_table, Rng& rng);

double kl_half_vs(double delta);

// Empirical Tc(delta): max modeled best_arm cost over pilot trials.
double calibrate_tc(const BanditInstance& instance, double delta, int trials,
                    Rng& rng);

}  // namespace qbai
