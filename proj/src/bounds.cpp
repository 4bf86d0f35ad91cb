#include "qbai/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbai {

namespace {

double c_of(double x) { return 2.0 * std::sqrt(x * (1.0 - x)); }

void require_floor(const BanditInstance& instance, double p_floor) {
    if (p_floor <= 0.0 || p_floor >= 0.5) {
        throw std::invalid_argument("p_floor must be in (0, 1/2)");
    }
    for (double p : instance.p) {
        if (p < p_floor || p > 1.0 - p_floor) {
            throw std::invalid_argument("bias outside [p_floor, 1 - p_floor]");
        }
    }
}

// p1 and p2 are the two largest biases.
std::pair<double, double> top_two(const BanditInstance& instance) {
    std::vector<double> sorted = instance.p;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double p2 = sorted.size() > 1 ? sorted[1] : sorted[0];
    return {sorted[0], p2};
}

}  // namespace

HardFamily make_hard_family(const BanditInstance& base, double p_floor) {
    require_floor(base, p_floor);
    auto [p1, p2] = top_two(base);

    HardFamily family;
    family.base = base;
    family.p_floor = p_floor;
    family.eta = p_floor * (p1 - p2) / 2.0;
    for (int x = 0; x < base.n_arms(); ++x) {
        if (x == base.best) continue;
        std::vector<double> biases = base.p;
        biases[x] = p1 + family.eta;
        family.variants.push_back(make_instance(biases));
    }
    return family;
}

AdversaryBound adversary_bound(const BanditInstance& instance, double delta,
                               double p_floor) {
    require_floor(instance, p_floor);
    if (delta <= 0.0 || delta >= 0.5) {
        throw std::invalid_argument("adversary_bound: delta in (0, 1/2)");
    }
    auto [p1, p2] = top_two(instance);
    const double eta = p_floor * (p1 - p2) / 2.0;

    double sum_prime = 0.0;
    double sum_plain = 0.0;
    for (int x = 0; x < instance.n_arms(); ++x) {
        if (x == instance.best) continue;
        double gap_prime = p1 + eta - instance.p[x];
        double gap = p1 - instance.p[x];
        sum_prime += 1.0 / (gap_prime * gap_prime);
        sum_plain += 1.0 / (gap * gap);
    }

    const double visibility = 1.0 - 2.0 * std::sqrt(delta * (1.0 - delta));
    AdversaryBound bound;
    bound.intermediate =
        visibility / (1.0 + 2.0 / c_of(p_floor - eta)) * std::sqrt(sum_prime);
    bound.simplified =
        0.8 * visibility / (1.0 + 2.0 / c_of(p_floor / 2.0)) * std::sqrt(sum_plain);
    return bound;
}

OverlapCheck check_overlap_inequality(double p1, double p2, double p_floor) {
    if (p_floor <= 0.0 || p_floor > 0.5) {
        throw std::invalid_argument("check_overlap_inequality: p_floor in (0, 1/2]");
    }
    for (double p : {p1, p2}) {
        if (p < p_floor || p > 1.0 - p_floor) {
            throw std::invalid_argument("check_overlap_inequality: bias out of range");
        }
    }
    OverlapCheck check;
    check.lhs = std::abs(std::sqrt((1.0 - p1) * p2) - std::sqrt((1.0 - p2) * p1));
    check.rhs = std::abs(p1 - p2) / (2.0 * std::sqrt(p_floor * (1.0 - p_floor)));
    check.holds = check.lhs <= check.rhs + 1e-12;
    return check;
}

BoundReport bound_vs_model(const BanditInstance& instance, double delta,
                           double p_floor, double modeled_cost) {
    if (modeled_cost <= 0.0) {
        throw std::invalid_argument("bound_vs_model: modeled cost must be positive");
    }
    BoundReport report;
    report.lower_bound = adversary_bound(instance, delta, p_floor).intermediate;
    report.modeled_cost = modeled_cost;
    report.ratio = report.lower_bound > 0.0 ? modeled_cost / report.lower_bound
                                            : std::numeric_limits<double>::infinity();
    report.consistent = report.lower_bound <= modeled_cost;
    return report;
}

}  // namespace qbai
