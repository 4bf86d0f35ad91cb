#pragma once

#include <cstdint>

#include "qbai/oracle.hpp"
#include "qbai/rng.hpp"

namespace qbai {

struct ClassicalResult {
    int arm = -1;
    std::uint64_t pulls_total = 0;
};

// Uniform sampling with the Hoeffding pull count t = ceil((8/delta2^2) ln(2n/delta)).
ClassicalResult naive(const BanditInstance& instance, double delta2_known,
                      double delta, Rng& rng);

// Successive elimination with deviation radius alpha_t = sqrt(ln(4 n t^2 / delta) / t).
ClassicalResult successive_elimination(const BanditInstance& instance, double delta,
                                       Rng& rng);

std::uint64_t naive_pulls(int n_arms, double delta2_known, double delta);

}  // namespace qbai
