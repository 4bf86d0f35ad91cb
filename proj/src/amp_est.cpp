#include "qbai/amp_est.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qbai {

namespace {

constexpr double kPi = std::numbers::pi;

// |<y|QPE|phase f>|^2 for one eigenphase, the standard Fejer-type kernel.
double phase_kernel(double f, int y, int m_points) {
    double d = f - static_cast<double>(y) / m_points;
    d -= std::round(d);
    if (d == 0.0) return 1.0;
    double num = std::sin(kPi * m_points * d);
    double den = m_points * std::sin(kPi * d);
    double v = num / den;
    return v * v;
}

// Kernel mass assigned to the folded estimate index k in {0..M/2}.
// Interior k collects both grid points y = k and y = M - k.
double folded_mass(double f, int k, int m_points) {
    double mass = phase_kernel(f, k, m_points);
    if (k > 0 && 2 * k < m_points) mass += phase_kernel(f, m_points - k, m_points);
    return mass;
}

}  // namespace

double binomial_tail(int r, int kmin, double q) {
    if (kmin <= 0) return 1.0;
    if (kmin > r) return 0.0;
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;
    double log_q = std::log(q);
    double log_1mq = std::log1p(-q);
    double sum = 0.0;
    for (int j = kmin; j <= r; ++j) {
        double log_term = std::lgamma(r + 1.0) - std::lgamma(j + 1.0) -
                          std::lgamma(r - j + 1.0) + j * log_q + (r - j) * log_1mq;
        sum += std::exp(log_term);
    }
    return sum < 1.0 ? sum : 1.0;
}

std::uint64_t aest_query_cost(const QpeConfig& config) {
    return static_cast<std::uint64_t>(config.reps) * 2ULL *
           static_cast<std::uint64_t>(config.m_points - 1);
}

QpeConfig choose_qpe_config(double eps, double delta) {
    if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0) {
        throw std::invalid_argument("choose_qpe_config: eps, delta must be in (0,1)");
    }
    QpeConfig config;
    int m = 2;
    while (2.0 * kPi / m + kPi * kPi / (static_cast<double>(m) * m) > eps) {
        m *= 2;
        if (m > (1 << 28)) throw std::invalid_argument("choose_qpe_config: eps too small");
    }
    config.m_points = m;

    static std::mutex cache_mutex;
    static std::map<double, int> reps_cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = reps_cache.find(delta);
        if (it != reps_cache.end()) {
            config.reps = it->second;
            return config;
        }
    }
    // Per-run failure probability of standard amplitude estimation.
    const double q_fail = 1.0 - 8.0 / (kPi * kPi);
    const double budget = delta * delta;
    int r = 1;
    while (binomial_tail(r, (r + 1) / 2, q_fail) > budget) {
        r += 2;
        if (r > 100001) throw std::invalid_argument("choose_qpe_config: delta too small");
    }
    config.reps = r;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        reps_cache[delta] = r;
    }
    return config;
}

MassSplit qpe_mass_split(double p, int m_points, double cutoff) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("qpe_mass_split: p out of range");
    double theta = std::asin(std::sqrt(p));
    double f = theta / kPi;
    MassSplit split;
    for (int k = 0; k <= m_points / 2; ++k) {
        double estimate = std::sin(kPi * k / m_points);
        estimate *= estimate;
        double mass = folded_mass(f, k, m_points);
        if (estimate < cutoff) {
            split.below += mass;
        } else {
            split.above += mass;
        }
    }
    return split;
}

QpeDistribution qpe_distribution(double p, const QpeConfig& config) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("qpe_distribution: p out of range");
    const int m = config.m_points;
    const int r = config.reps;
    double theta = std::asin(std::sqrt(p));
    double f = theta / kPi;

    QpeDistribution dist;
    dist.value.reserve(m / 2 + 1);
    dist.mass.reserve(m / 2 + 1);
    std::vector<double> single;
    single.reserve(m / 2 + 1);
    for (int k = 0; k <= m / 2; ++k) {
        double estimate = std::sin(kPi * k / m);
        dist.value.push_back(estimate * estimate);
        single.push_back(folded_mass(f, k, m));
    }
    if (r == 1) {
        dist.mass = single;
        return dist;
    }
    // Exact distribution of the median of r i.i.d. grid outcomes:
    // Pr[med <= v_k] = Pr[Bin(r, F(v_k)) >= (r+1)/2].
    const int kmin = (r + 1) / 2;
    double prev_tail = 0.0;
    double cdf = 0.0;
    for (std::size_t k = 0; k < single.size(); ++k) {
        cdf += single[k];
        double tail = binomial_tail(r, kmin, cdf < 1.0 ? cdf : 1.0);
        dist.mass.push_back(tail - prev_tail);
        prev_tail = tail;
    }
    return dist;
}

GaeOutcome gae_with_config(double p, const QpeConfig& config, double cutoff) {
    MassSplit split = qpe_mass_split(p, config.m_points, cutoff);
    const int kmin = (config.reps + 1) / 2;
    GaeOutcome out;
    // Median below cutoff iff at least (r+1)/2 single runs land below; the
    // complementary event mirrors exactly for odd r. Evaluate the smaller
    // tail directly and derive the other from normalization.
    if (split.below <= split.above) {
        double pr_below = binomial_tail(config.reps, kmin, split.below);
        out.beta1 = std::sqrt(pr_below);
        out.beta0 = std::sqrt(1.0 - pr_below);
    } else {
        double pr_above = binomial_tail(config.reps, kmin, split.above);
        out.beta0 = std::sqrt(pr_above);
        out.beta1 = std::sqrt(1.0 - pr_above);
    }
    return out;
}

GaeOutcome gae(double p, double eps, double delta, double l) {
    if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0 || l <= 0.0 || l >= 1.0) {
        throw std::invalid_argument("gae: eps, delta, l must be in (0,1)");
    }
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gae: p out of range");
    QpeConfig config = choose_qpe_config(eps / 4.0, delta);
    return gae_with_config(p, config, l - 1.5 * eps);
}

}  // namespace qbai
