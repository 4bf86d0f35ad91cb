#include "qbai/vtaa_vtae.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qbai {

CostModel cost_model(const VtaProfile& profile, double eps, double delta) {
    if (profile.psucc <= 0.0) throw std::invalid_argument("cost_model: psucc must be positive");
    if (eps <= 0.0 || delta <= 0.0 || delta >= 1.0) {
        throw std::invalid_argument("cost_model: need eps > 0 and delta in (0,1)");
    }
    CostModel model;
    double t_max = static_cast<double>(profile.t.back());
    double log_t = std::log2(t_max);
    model.Q = t_max * log_t + profile.t_avg / std::sqrt(profile.psucc) * log_t;
    model.r_rep = static_cast<int>(std::ceil(std::log2(2.0 / delta)));
    if (model.r_rep < 1) model.r_rep = 1;
    model.amplify_cost = model.r_rep * model.Q;
    model.estimate_cost =
        model.Q / eps * log_t * log_t * std::log2(std::log2(t_max / delta));
    return model;
}

namespace {

int sample_arm_marginal(const BranchState& state, int flag, Rng& rng) {
    std::vector<double> mass(state.n_arms, 0.0);
    double total = 0.0;
    for (const auto& c : state.components) {
        if (c.flag == flag) {
            double w = std::norm(c.amp);
            mass[c.arm] += w;
            total += w;
        }
    }
    if (total <= 0.0) return -1;
    double u = rng.uniform() * total;
    double acc = 0.0;
    for (int i = 0; i < state.n_arms; ++i) {
        acc += mass[i];
        if (u < acc) return i;
    }
    return state.n_arms - 1;
}

}  // namespace

AmplifyResult amplify(const VtaRun& run, double delta, Rng& rng) {
    if (run.profile.psucc <= 0.0) {
        throw std::runtime_error("amplify: empty success subspace");
    }
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("amplify: delta in (0,1)");

    CostModel model = cost_model(run.profile, 1.0, delta);
    AmplifyResult result;
    result.ledger.charge("amplify", run.profile.t.back());
    result.ledger.add_modeled(model.amplify_cost);

    bool succeeded = false;
    for (int attempt = 0; attempt < model.r_rep; ++attempt) {
        if (rng.bernoulli(0.5)) {
            succeeded = true;
            break;
        }
    }
    if (succeeded) {
        result.arm = sample_arm_marginal(run.state, 1, rng);
    } else {
        result.arm = static_cast<int>(rng.uniform_int(run.state.n_arms));
    }
    return result;
}

EstimateResult estimate(const VtaRun& run, double eps, double delta,
                        EstimateMode mode, Rng& rng) {
    if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("estimate: eps in [0,1)");
    const double n = static_cast<double>(run.state.n_arms);

    EstimateResult result;
    result.ledger.charge("estimate", run.profile.t.back());
    if (eps > 0.0 && delta > 0.0 && delta < 1.0) {
        result.ledger.add_modeled(cost_model(run.profile, eps, delta).estimate_cost);
    }

    switch (mode) {
        case EstimateMode::honest: {
            bool fail = delta > 0.0 && rng.bernoulli(delta);
            double u = rng.uniform(-eps, eps);
            result.r = fail ? rng.uniform(0.0, 2.0) : run.profile.psucc * (1.0 + u);
            break;
        }
        case EstimateMode::adversarial_low:
            result.r = (1.0 - eps) * (run.profile.psucc_prime - 0.1 / n);
            break;
        case EstimateMode::adversarial_high:
            result.r = (1.0 + eps) * (run.profile.psucc_prime + 0.1 / n);
            break;
    }
    return result;
}

}  // namespace qbai
