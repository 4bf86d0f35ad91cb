#pragma once

#include "qbai/ledger.hpp"
#include "qbai/rng.hpp"
#include "qbai/vta.hpp"

namespace qbai {

// Variable-time query costs charged for one Amplify / Estimate invocation.
struct CostModel {
    double Q = 0.0;             // t_{m+1} log t_{m+1} + (t_avg / sqrt(psucc)) log t_{m+1}
    int r_rep = 1;              // ceil(log2(2/delta)) amplification repetitions
    double amplify_cost = 0.0;  // r_rep * Q
    double estimate_cost = 0.0; // (Q/eps) log^2(t_{m+1}) log(log(t_{m+1}/delta))
};

enum class EstimateMode { honest, adversarial_low, adversarial_high };

CostModel cost_model(const VtaProfile& profile, double eps, double delta);

struct AmplifyResult {
    int arm = -1;
    QueryLedger ledger;
};

// Exact two-dimensional-rotation amplification: samples the arm register of
// the normalized flag-1 projection, with per-attempt success probability 1/2
// repeated r_rep times. Charges amplify_cost as modeled cost.
AmplifyResult amplify(const VtaRun& run, double delta, Rng& rng);

struct EstimateResult {
    double r = 0.0;
    QueryLedger ledger;
};

// Honest mode returns psucc*(1+u), u ~ U[-eps, eps], except with probability
// delta where it returns an arbitrary value in [0, 2]. Adversarial modes
// return the exact sandwich boundaries around psucc'.
EstimateResult estimate(const VtaRun& run, double eps, double delta,
                        EstimateMode mode, Rng& rng);

}  // namespace qbai
