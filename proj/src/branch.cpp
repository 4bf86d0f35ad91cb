#include "qbai/branch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace qbai {

namespace {

auto label_of(const BranchComponent& c) {
    return std::make_tuple(c.arm, c.clock, c.garbage, c.flag);
}

}  // namespace

std::pair<BranchState, double> project_flag(const BranchState& state, int bit) {
    BranchState projected;
    projected.n_arms = state.n_arms;
    double squared_norm = 0.0;
    for (const auto& c : state.components) {
        if (c.flag == bit) {
            projected.components.push_back(c);
            squared_norm += std::norm(c.amp);
        }
    }
    if (squared_norm == 0.0) {
        projected.components.clear();
        return {projected, 0.0};
    }
    double inv = 1.0 / std::sqrt(squared_norm);
    for (auto& c : projected.components) c.amp *= inv;
    return {projected, squared_norm};
}

Amplitude inner_product(const BranchState& a, const BranchState& b) {
    if (a.n_arms != b.n_arms) {
        throw std::invalid_argument("inner_product: mismatched arm counts");
    }
    auto sorted_components = [](const BranchState& s) {
        std::vector<BranchComponent> v = s.components;
        std::sort(v.begin(), v.end(), [](const BranchComponent& x, const BranchComponent& y) {
            return label_of(x) < label_of(y);
        });
        return v;
    };
    std::vector<BranchComponent> av = sorted_components(a);
    std::vector<BranchComponent> bv = sorted_components(b);
    Amplitude result = 0.0;
    std::size_t i = 0, j = 0;
    while (i < av.size() && j < bv.size()) {
        auto la = label_of(av[i]);
        auto lb = label_of(bv[j]);
        if (la == lb) {
            result += std::conj(av[i].amp) * bv[j].amp;
            ++i;
            ++j;
        } else if (la < lb) {
            ++i;
        } else {
            ++j;
        }
    }
    return result;
}

}  // namespace qbai
