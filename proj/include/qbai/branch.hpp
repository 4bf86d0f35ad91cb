#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace qbai {

using Amplitude = std::complex<double>;

// One orthogonal component of the block-diagonal state of the variable-time
// algorithm. Components with distinct (arm, clock, garbage, flag) tuples are
// mutually orthogonal by construction; `garbage` is an opaque label standing
// in for the phase-estimation registers P.
struct BranchComponent {
    int arm = 0;
    int clock = 0;    // unary stop step, 0 = not yet stopped, m+1 = never stopped
    int garbage = 0;
    int flag = 1;
    Amplitude amp;
};

struct BranchState {
    std::vector<BranchComponent> components;
    int n_arms = 0;

    double squared_norm() const {
        double total = 0.0;
        for (const auto& c : components) total += std::norm(c.amp);
        return total;
    }
};

// Projects onto the given flag value and renormalizes. Returns the projected
// state and its squared norm (the Born probability of the flag outcome).
std::pair<BranchState, double> project_flag(const BranchState& state, int bit);

// <a|b> over matching (arm, clock, garbage, flag) labels.
Amplitude inner_product(const BranchState& a, const BranchState& b);

}  // namespace qbai
