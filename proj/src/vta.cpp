#include "qbai/vta.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace qbai {

VtaParams VtaParams::make(double l2, double l1, double alpha, int n_arms) {
    if (!(0.0 < l2 && l2 < l1 && l1 < 1.0)) {
        throw std::invalid_argument("VtaParams: need 0 < l2 < l1 < 1");
    }
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw std::invalid_argument("VtaParams: alpha must be in (0,1)");
    }
    VtaParams params;
    params.l2 = l2;
    params.l1 = l1;
    params.alpha = alpha;
    params.delta_width = l1 - l2;
    params.m = static_cast<int>(std::ceil(std::log2(1.0 / params.delta_width))) + 2;
    params.a = alpha / (2.0 * params.m * std::pow(static_cast<double>(n_arms), 1.5));
    return params;
}

std::vector<int> ArmSets::s_lm() const {
    std::vector<int> out = s_left;
    out.insert(out.end(), s_mid.begin(), s_mid.end());
    return out;
}

std::vector<int> ArmSets::s_mr() const {
    std::vector<int> out = s_mid;
    out.insert(out.end(), s_right.begin(), s_right.end());
    return out;
}

ArmSets arm_sets(const BanditInstance& instance, const VtaParams& params) {
    ArmSets sets;
    const double delta = params.delta_width;
    for (int i = 0; i < instance.n_arms(); ++i) {
        double p = instance.p[i];
        if (p >= params.l1 - delta / 8.0) {
            sets.s_right.push_back(i);
        } else if (p >= params.l1 - delta / 2.0) {
            sets.s_mid.push_back(i);
        } else {
            sets.s_left.push_back(i);
        }
    }
    return sets;
}

VtaRun run_vta(const BanditInstance& instance, const VtaParams& params,
               std::optional<QpeConfig> override_config) {
    const int n = instance.n_arms();
    if (n < 1) throw std::invalid_argument("run_vta: empty instance");
    const int m = params.m;

    VtaRun run;
    run.params = params;
    run.sets = arm_sets(instance, params);
    run.biases = instance.p;
    run.state.n_arms = n;

    for (int j = 1; j <= m; ++j) {
        double eps_j = std::ldexp(1.0, -j);
        run.stage_configs.push_back(override_config
                                        ? *override_config
                                        : choose_qpe_config(eps_j / 4.0, params.a));
        run.stage_cutoffs.push_back(params.l1 - 1.5 * eps_j);
    }

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        double survive = 1.0;  // amplitude of the not-yet-stopped branch of arm i
        for (int j = 1; j <= m; ++j) {
            GaeOutcome g = gae_with_config(instance.p[i], run.stage_configs[j - 1],
                                           run.stage_cutoffs[j - 1]);
            double stop_amp = survive * g.beta1;
            if (stop_amp != 0.0) {
                run.state.components.push_back(
                    {i, j, /*garbage=*/j, /*flag=*/0, Amplitude(inv_sqrt_n * stop_amp, 0.0)});
            }
            survive *= g.beta0;
        }
        run.state.components.push_back(
            {i, m + 1, /*garbage=*/0, /*flag=*/1, Amplitude(inv_sqrt_n * survive, 0.0)});
    }

    run.ledger.charge("init", 1);
    for (int j = 1; j <= m; ++j) {
        run.ledger.charge("gae_stage_" + std::to_string(j),
                          aest_query_cost(run.stage_configs[j - 1]));
    }

    run.profile = stopping_profile(run);
    return run;
}

double psucc_closed_form(const BanditInstance& instance, const VtaParams& params,
                         const BranchState& state) {
    const int n = instance.n_arms();
    ArmSets sets = arm_sets(instance, params);
    // Exact flag-1 mass within each branch; per-arm branch mass is 1/n.
    std::vector<double> flag1_mass(n, 0.0);
    for (const auto& c : state.components) {
        if (c.flag == 1) flag1_mass[c.arm] += std::norm(c.amp);
    }
    double total = static_cast<double>(sets.s_right.size());
    for (int i : sets.s_mid) total += flag1_mass[i] * n;
    return total / n;
}

VtaProfile stopping_profile(const VtaRun& run) {
    const int m = run.params.m;
    VtaProfile profile;
    profile.t.resize(m + 1, 0);
    profile.w.resize(m + 1, 0.0);

    std::uint64_t cumulative = 1;  // the initialization query
    for (int j = 1; j <= m; ++j) {
        cumulative += aest_query_cost(run.stage_configs[j - 1]);
        profile.t[j - 1] = cumulative;
    }
    profile.t[m] = cumulative;  // termination step uses no queries

    for (const auto& c : run.state.components) {
        if (c.clock >= 1 && c.clock <= m + 1) profile.w[c.clock - 1] += std::norm(c.amp);
        if (c.flag == 1) profile.psucc += std::norm(c.amp);
    }
    double sum = 0.0;
    for (int j = 0; j <= m; ++j) {
        sum += profile.w[j] * static_cast<double>(profile.t[j]) * static_cast<double>(profile.t[j]);
    }
    profile.t_avg = std::sqrt(sum);

    BanditInstance oracle;
    oracle.p = run.biases;
    profile.psucc_prime = psucc_closed_form(oracle, run.params, run.state);
    return profile;
}

namespace {

struct VtaCacheKey {
    std::vector<double> p;
    double l2, l1, alpha;

    bool operator<(const VtaCacheKey& o) const {
        if (l2 != o.l2) return l2 < o.l2;
        if (l1 != o.l1) return l1 < o.l1;
        if (alpha != o.alpha) return alpha < o.alpha;
        return p < o.p;
    }
};

}  // namespace

std::shared_ptr<const VtaRun> run_vta_cached(const BanditInstance& instance,
                                             double l2, double l1, double alpha) {
    static std::mutex cache_mutex;
    static std::map<VtaCacheKey, std::shared_ptr<const VtaRun>> cache;

    VtaCacheKey key{instance.p, l2, l1, alpha};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    VtaParams params = VtaParams::make(l2, l1, alpha, instance.n_arms());
    auto run = std::make_shared<const VtaRun>(run_vta(instance, params));
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        cache.emplace(key, run);
        if (cache.size() > 4096) cache.clear();  // crude bound on memory
    }
    return run;
}

}  // namespace qbai
