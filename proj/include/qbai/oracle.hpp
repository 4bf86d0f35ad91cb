#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qbai {

// A multi-armed Bernoulli bandit with a unique best arm. Biases are stored
// in caller order; arm indices are 0-based. When a synthetic perfect arm has
// been appended it sits at index 0 and `has_synthetic_arm` is set.
struct BanditInstance {
    std::vector<double> p;
    int best = -1;              // index of the unique maximum bias
    bool has_synthetic_arm = false;

    int n_arms() const { return static_cast<int>(p.size()); }
};

// Sorted-order gaps and the hardness quantity H = sum_{i>=2} 1/Delta_i^2.
struct GapProfile {
    std::vector<double> delta;  // Delta_i = p_(1) - p_(i), i = 2..n
    double H = 0.0;
    double delta2 = 0.0;        // smallest nonzero gap
};

BanditInstance make_instance(const std::vector<double>& p);

GapProfile hardness(const BanditInstance& instance);

// Appends the synthetic arm 0 with bias exactly 1 (Shrink's O' oracle).
BanditInstance append_perfect_arm(const BanditInstance& instance);

// (sqrt(1-p), sqrt(p)) amplitudes of the coin state.
std::pair<double, double> coin_amplitudes(double p);

// JSON instance file: {"p": [..]}. Validates the BanditInstance invariants.
BanditInstance load_instance(const std::string& path);

}  // namespace qbai
