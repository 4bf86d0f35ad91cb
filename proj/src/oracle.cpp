#include "qbai/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qbai {

BanditInstance make_instance(const std::vector<double>& p) {
    if (p.empty()) throw std::invalid_argument("instance must have at least one arm");
    int best = 0;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (p[i] < 0.0 || p[i] > 1.0) {
            throw std::invalid_argument("bias out of range [0,1]");
        }
        if (p[i] > p[best]) best = i;
    }
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (i != best && p[i] == p[best]) {
            throw std::invalid_argument("best arm not unique");
        }
    }
    BanditInstance instance;
    instance.p = p;
    instance.best = best;
    return instance;
}

GapProfile hardness(const BanditInstance& instance) {
    std::vector<double> sorted = instance.p;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    GapProfile profile;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        double gap = sorted[0] - sorted[i];
        profile.delta.push_back(gap);
        profile.H += 1.0 / (gap * gap);
    }
    profile.delta2 = profile.delta.empty() ? 0.0 : profile.delta.front();
    return profile;
}

BanditInstance append_perfect_arm(const BanditInstance& instance) {
    if (instance.p.empty()) throw std::invalid_argument("empty instance");
    if (instance.has_synthetic_arm) {
        throw std::invalid_argument("instance already has a synthetic arm");
    }
    BanditInstance out;
    out.p.reserve(instance.p.size() + 1);
    out.p.push_back(1.0);
    out.p.insert(out.p.end(), instance.p.begin(), instance.p.end());
    out.best = 0;
    out.has_synthetic_arm = true;
    return out;
}

std::pair<double, double> coin_amplitudes(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bias out of range [0,1]");
    return {std::sqrt(1.0 - p), std::sqrt(p)};
}

BanditInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    nlohmann::json doc;
    in >> doc;
    if (!doc.contains("p") || !doc["p"].is_array()) {
        throw std::invalid_argument("instance file must contain an array field \"p\"");
    }
    return make_instance(doc["p"].get<std::vector<double>>());
}

}  // namespace qbai
