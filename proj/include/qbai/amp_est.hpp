#pragma once

#include <cstdint>
#include <vector>

namespace qbai {

// Phase-estimation configuration: M-point grid (power of two) and an odd
// median-repetition count r.
struct QpeConfig {
    int m_points = 2;
    int reps = 1;
};

// Outcome amplitudes of gapped amplitude estimation. The clock bit is 1
// ("stopped / below threshold") with amplitude beta1.
struct GaeOutcome {
    double beta0 = 1.0;
    double beta1 = 0.0;
};

// Exact outcome distribution over the grid of bias estimates
// p_hat = sin^2(pi*k/M), k = 0..M/2, after analytic median-of-r aggregation.
struct QpeDistribution {
    std::vector<double> value;  // ascending grid estimates
    std::vector<double> mass;
};

QpeDistribution qpe_distribution(double p, const QpeConfig& config);

// Single-run probability mass strictly below / at-or-above `cutoff`,
// computed by direct summation of the phase-estimation kernel (both sides
// summed independently, no 1-x cancellation).
struct MassSplit {
    double below = 0.0;
    double above = 0.0;
};
MassSplit qpe_mass_split(double p, int m_points, double cutoff);

// Pr[Binomial(r, q) >= kmin], summed in log space.
double binomial_tail(int r, int kmin, double q);

// Raw oracle calls of one AEst run: r * 2 * (M - 1).
std::uint64_t aest_query_cost(const QpeConfig& config);

// Smallest power-of-two M with 2*pi/M + pi^2/M^2 <= eps, and smallest odd r
// whose exact median failure tail is at most delta^2 (delta bounds the bad
// *amplitude*, so the probability budget is its square).
QpeConfig choose_qpe_config(double eps, double delta);

// Gapped amplitude estimation GAE(eps, delta; l): AEst at precision eps/4
// and confidence delta, thresholded at the midpoint l - 1.5*eps.
GaeOutcome gae(double p, double eps, double delta, double l);

// GAE with an explicit config and threshold; used by the gate-level
// cross-validation backend, which must share the exact kernel.
GaeOutcome gae_with_config(double p, const QpeConfig& config, double cutoff);

}  // namespace qbai
