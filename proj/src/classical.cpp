#include "qbai/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qbai {

std::uint64_t naive_pulls(int n_arms, double delta2_known, double delta) {
    if (delta2_known <= 0.0) throw std::invalid_argument("naive: delta2_known must be positive");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("naive: delta in (0,1)");
    double t = std::ceil(8.0 / (delta2_known * delta2_known) *
                         std::log(2.0 * n_arms / delta));
    return static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n_arms);
}

ClassicalResult naive(const BanditInstance& instance, double delta2_known,
                      double delta, Rng& rng) {
    const int n = instance.n_arms();
    std::uint64_t total = naive_pulls(n, delta2_known, delta);
    std::uint64_t t = total / static_cast<std::uint64_t>(n);

    ClassicalResult result;
    result.pulls_total = total;
    double best_mean = -1.0;
    for (int i = 0; i < n; ++i) {
        std::uint64_t successes = 0;
        for (std::uint64_t s = 0; s < t; ++s) {
            if (rng.bernoulli(instance.p[i])) ++successes;
        }
        double mean = static_cast<double>(successes) / static_cast<double>(t);
        if (mean > best_mean) {
            best_mean = mean;
            result.arm = i;
        }
    }
    return result;
}

ClassicalResult successive_elimination(const BanditInstance& instance, double delta,
                                       Rng& rng) {
    if (delta <= 0.0 || delta >= 1.0) {
        throw std::invalid_argument("successive_elimination: delta in (0,1)");
    }
    const int n = instance.n_arms();

    ClassicalResult result;
    std::vector<int> active(n);
    for (int i = 0; i < n; ++i) active[i] = i;
    std::vector<std::uint64_t> successes(n, 0);

    std::uint64_t t = 0;
    while (active.size() > 1) {
        ++t;
        for (int i : active) {
            if (rng.bernoulli(instance.p[i])) ++successes[i];
        }
        result.pulls_total += active.size();

        double alpha = std::sqrt(
            std::log(4.0 * n * static_cast<double>(t) * static_cast<double>(t) / delta) /
            static_cast<double>(t));
        double top = 0.0;
        for (int i : active) {
            top = std::max(top, static_cast<double>(successes[i]) / static_cast<double>(t));
        }
        std::vector<int> survivors;
        survivors.reserve(active.size());
        for (int i : active) {
            double mean = static_cast<double>(successes[i]) / static_cast<double>(t);
            if (top - mean < 2.0 * alpha) survivors.push_back(i);
        }
        active = std::move(survivors);
    }
    result.arm = active.front();
    return result;
}

}  // namespace qbai
