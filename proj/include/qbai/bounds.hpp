#pragma once

#include <vector>

#include "qbai/oracle.hpp"

namespace qbai {

// Hard-instance family: variant x raises arm x's bias to p1 + eta so that
// the variants are pairwise hard to distinguish.
struct HardFamily {
    BanditInstance base;
    double p_floor = 0.0;
    double eta = 0.0;
    std::vector<BanditInstance> variants;
};

HardFamily make_hard_family(const BanditInstance& base, double p_floor);

struct AdversaryBound {
    double intermediate = 0.0;  // (1-2 sqrt(d(1-d)))/(1+2/c(p-eta)) sqrt(sum 1/gap'^2)
    double simplified = 0.0;    // (4/5)(1-2 sqrt(d(1-d)))/(1+2/c(p/2)) sqrt(sum 1/gap^2)
};

AdversaryBound adversary_bound(const BanditInstance& instance, double delta,
                               double p_floor);

struct OverlapCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

OverlapCheck check_overlap_inequality(double p1, double p2, double p_floor);

struct BoundReport {
    double lower_bound = 0.0;
    double modeled_cost = 0.0;
    double ratio = 0.0;
    bool consistent = false;
};

BoundReport bound_vs_model(const BanditInstance& instance, double delta,
                           double p_floor, double modeled_cost);

}  // namespace qbai
