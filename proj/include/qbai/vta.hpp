#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qbai/amp_est.hpp"
#include "qbai/branch.hpp"
#include "qbai/ledger.hpp"
#include "qbai/oracle.hpp"

namespace qbai {

// Parameters of the variable-time algorithm A(O, l2, l1, alpha).
struct VtaParams {
    double l2 = 0.0;
    double l1 = 0.0;
    double alpha = 0.0;
    double delta_width = 0.0;  // l1 - l2
    int m = 0;                 // ceil(log2(1/Delta)) + 2
    double a = 0.0;            // per-stage GAE confidence alpha / (2 m n^{3/2})

    static VtaParams make(double l2, double l1, double alpha, int n_arms);
};

// Partition of the arm indices by bias relative to l1 (white-box helper).
struct ArmSets {
    std::vector<int> s_left;   // p_i <  l1 - Delta/2
    std::vector<int> s_mid;    // l1 - Delta/2 <= p_i < l1 - Delta/8
    std::vector<int> s_right;  // p_i >= l1 - Delta/8

    std::vector<int> s_lm() const;
    std::vector<int> s_mr() const;
};

// Stopping-time profile of one execution of A.
struct VtaProfile {
    std::vector<std::uint64_t> t;  // t_1..t_{m+1}
    std::vector<double> w;         // w_1..w_{m+1}
    double t_avg = 0.0;            // sqrt(sum w_j t_j^2)
    double psucc = 0.0;            // exact flag-1 mass
    double psucc_prime = 0.0;      // closed form (|S_>| + sum over S_- of branch mass)/n
};

struct VtaRun {
    BranchState state;
    VtaProfile profile;
    QueryLedger ledger;
    VtaParams params;
    ArmSets sets;
    std::vector<double> biases;            // oracle biases A was built on
    std::vector<QpeConfig> stage_configs;  // one per stage j = 1..m
    std::vector<double> stage_cutoffs;
};

ArmSets arm_sets(const BanditInstance& instance, const VtaParams& params);

// Executes A exactly on the branch backend. `override_config`, when set,
// replaces the per-stage QPE configuration (used only for gate-level
// cross-validation with matched register widths).
VtaRun run_vta(const BanditInstance& instance, const VtaParams& params,
               std::optional<QpeConfig> override_config = std::nullopt);

// Memoized run_vta; A is deterministic so runs are shared across trials.
std::shared_ptr<const VtaRun> run_vta_cached(const BanditInstance& instance,
                                             double l2, double l1, double alpha);

double psucc_closed_form(const BanditInstance& instance, const VtaParams& params,
                         const BranchState& state);

VtaProfile stopping_profile(const VtaRun& run);

}  // namespace qbai
