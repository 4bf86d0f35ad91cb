#include "qbai/gate_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbai {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

// Index layout (most significant first): I, B, C (m+1 bits), P (m stages x
// r reps, each a base-M digit), F.
struct Layout {
    int n_arms;
    int m;
    int grid;  // M
    int reps;
    std::size_t p_digits;   // m * reps
    std::size_t p_dim;      // M^(m*reps)
    std::size_t c_dim;      // 2^(m+1)
    std::size_t total_dim;

    std::size_t stride_f() const { return 1; }
    std::size_t stride_p_digit(int stage, int rep) const {
        // stage in 1..m, rep in 0..reps-1; digit index counted stage-major
        std::size_t digit = static_cast<std::size_t>(stage - 1) * reps + rep;
        std::size_t s = 2;  // skip F
        for (std::size_t d = p_digits; d > digit + 1; --d) s *= grid;
        return s;
    }
    std::size_t stride_c() const { return 2 * p_dim; }
    std::size_t stride_b() const { return stride_c() * c_dim; }
    std::size_t stride_i() const { return stride_b() * 2; }
};

int qubits_of(std::size_t dim) {
    int q = 0;
    while ((1ULL << q) < dim) ++q;
    return q;
}

// Decomposed view of one basis index.
struct Decoded {
    int arm;
    int b;
    std::size_t c;
    std::size_t p;  // packed P digits
    int f;
};

Decoded decode(const Layout& lay, std::size_t idx) {
    Decoded d;
    d.f = static_cast<int>(idx % 2);
    idx /= 2;
    d.p = idx % lay.p_dim;
    idx /= lay.p_dim;
    d.c = idx % lay.c_dim;
    idx /= lay.c_dim;
    d.b = static_cast<int>(idx % 2);
    idx /= 2;
    d.arm = static_cast<int>(idx);
    return d;
}

std::size_t p_digit(const Layout& lay, std::size_t packed_p, int stage, int rep) {
    std::size_t digit = static_cast<std::size_t>(stage - 1) * lay.reps + rep;
    std::size_t divisor = 1;
    for (std::size_t d = lay.p_digits; d > digit + 1; --d) divisor *= lay.grid;
    return (packed_p / divisor) % lay.grid;
}

bool clock_zero_before(std::size_t c, int stage) {
    // true when clock bits C_1..C_{stage-1} are all zero
    std::size_t mask = (stage > 1) ? ((1ULL << (stage - 1)) - 1) : 0;
    return (c & mask) == 0;
}

}  // namespace

GateState gate_level_run(const BanditInstance& instance, double l2, double l1,
                         double alpha, const GateRegisterWidths& widths) {
    const int n = instance.n_arms();
    VtaParams params = VtaParams::make(l2, l1, alpha, n);
    const int m = params.m;

    Layout lay;
    lay.n_arms = n;
    lay.m = m;
    lay.grid = 1 << widths.grid_qubits;
    lay.reps = widths.reps;
    lay.p_digits = static_cast<std::size_t>(m) * widths.reps;
    lay.p_dim = 1;
    for (std::size_t d = 0; d < lay.p_digits; ++d) lay.p_dim *= lay.grid;
    lay.c_dim = 1ULL << (m + 1);

    // Qubit budget check, reported per register.
    int q_index = qubits_of(static_cast<std::size_t>(n));
    int q_clock = m + 1;
    int q_phase = static_cast<int>(lay.p_digits) * widths.grid_qubits;
    int budget = 26;
    int used = 0;
    auto take = [&](const char* name, int q) {
        used += q;
        if (used > budget) {
            throw std::invalid_argument(std::string("gate_level_run: qubit budget 26 exceeded by register ") +
                                        name + " (" + std::to_string(used) + " qubits total)");
        }
    };
    take("I", q_index);
    take("B", 1);
    take("C", q_clock);
    take("P", q_phase);
    take("F", 1);

    lay.total_dim = static_cast<std::size_t>(n) * 2 * lay.c_dim * lay.p_dim * 2;

    GateState state;
    state.n_arms = n;
    state.m = m;
    state.widths = widths;
    state.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lay.total_dim));

    // Initialization: (1/sqrt n) sum_i |i>|coin p_i>|0>_C|0>_P|1>_F.
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        auto [a0, a1] = coin_amplitudes(instance.p[i]);
        std::size_t base = static_cast<std::size_t>(i) * lay.stride_i() + 1;  // F = 1
        state.amps[static_cast<Eigen::Index>(base)] = inv_sqrt_n * a0;
        state.amps[static_cast<Eigen::Index>(base + lay.stride_b())] = inv_sqrt_n * a1;
    }

    // Grid estimates and DFT matrices.
    const int M = lay.grid;
    std::vector<double> estimate(M);
    for (int y = 0; y < M; ++y) {
        double s = std::sin(kPi * std::min(y, M - y) / M);
        estimate[y] = s * s;
    }
    Eigen::MatrixXcd dft(M, M), idft(M, M);
    for (int a = 0; a < M; ++a) {
        for (int b = 0; b < M; ++b) {
            Complex w = std::exp(Complex(0.0, 2.0 * kPi * a * b / M));
            dft(a, b) = w / std::sqrt(static_cast<double>(M));
            idft(a, b) = std::conj(w) / std::sqrt(static_cast<double>(M));
        }
    }

    auto apply_p_matrix = [&](int stage, int rep, const Eigen::MatrixXcd& mat,
                              bool arm_specific, int arm) {
        // Applies `mat` on phase register (stage, rep), controlled on
        // C_1..C_{stage-1} = 0 (and on I = arm when arm_specific).
        std::size_t stride = lay.stride_p_digit(stage, rep);
        Eigen::VectorXcd column(M), result(M);
        for (std::size_t idx = 0; idx < lay.total_dim; ++idx) {
            Decoded d = decode(lay, idx);
            if (arm_specific && d.arm != arm) continue;
            if (!clock_zero_before(d.c, stage)) continue;
            if (p_digit(lay, d.p, stage, rep) != 0) continue;  // visit each slice once
            bool nonzero = false;
            for (int y = 0; y < M; ++y) {
                column[y] = state.amps[static_cast<Eigen::Index>(idx + y * stride)];
                if (column[y] != 0.0) nonzero = true;
            }
            if (!nonzero) continue;
            result = mat * column;
            for (int y = 0; y < M; ++y) {
                state.amps[static_cast<Eigen::Index>(idx + y * stride)] = result[y];
            }
        }
    };

    for (int stage = 1; stage <= m; ++stage) {
        double eps_j = std::ldexp(1.0, -stage);
        double cutoff = l1 - 1.5 * eps_j;

        for (int rep = 0; rep < lay.reps; ++rep) {
            // QPE: uniform preparation, controlled Grover powers, inverse DFT.
            apply_p_matrix(stage, rep, dft, false, 0);

            for (int arm = 0; arm < n; ++arm) {
                double theta = std::asin(std::sqrt(instance.p[arm]));
                std::size_t stride = lay.stride_p_digit(stage, rep);
                // Q^y = rotation by 2*theta*y with Q = A Z A^dag Z.
                std::vector<Eigen::Matrix2cd> powers(M);
                for (int y = 0; y < M; ++y) {
                    double ang = 2.0 * theta * y;
                    powers[y] << std::cos(ang), -std::sin(ang), std::sin(ang), std::cos(ang);
                }
                for (std::size_t idx = 0; idx < lay.total_dim; ++idx) {
                    Decoded d = decode(lay, idx);
                    if (d.arm != arm || d.b != 0) continue;
                    if (!clock_zero_before(d.c, stage)) continue;
                    int y = static_cast<int>(p_digit(lay, d.p, stage, rep));
                    if (y == 0) continue;
                    std::size_t idx1 = idx + lay.stride_b();
                    Complex b0 = state.amps[static_cast<Eigen::Index>(idx)];
                    Complex b1 = state.amps[static_cast<Eigen::Index>(idx1)];
                    if (b0 == 0.0 && b1 == 0.0) continue;
                    const Eigen::Matrix2cd& q = powers[y];
                    state.amps[static_cast<Eigen::Index>(idx)] = q(0, 0) * b0 + q(0, 1) * b1;
                    state.amps[static_cast<Eigen::Index>(idx1)] = q(1, 0) * b0 + q(1, 1) * b1;
                }
            }

            apply_p_matrix(stage, rep, idft, false, 0);
        }

        // Threshold comparator: flip C_stage when the median estimate of the
        // stage's reps lies below the cutoff.
        std::size_t c_bit = 1ULL << (stage - 1);
        std::vector<double> reps_vals(lay.reps);
        for (std::size_t idx = 0; idx < lay.total_dim; ++idx) {
            Decoded d = decode(lay, idx);
            if ((d.c & c_bit) != 0) continue;  // visit the C_stage = 0 half once
            if (!clock_zero_before(d.c, stage)) continue;
            for (int rep = 0; rep < lay.reps; ++rep) {
                reps_vals[rep] = estimate[p_digit(lay, d.p, stage, rep)];
            }
            std::nth_element(reps_vals.begin(), reps_vals.begin() + lay.reps / 2, reps_vals.end());
            double median = reps_vals[lay.reps / 2];
            if (median < cutoff) {
                std::size_t partner = idx + c_bit * lay.stride_c();
                std::swap(state.amps[static_cast<Eigen::Index>(idx)],
                          state.amps[static_cast<Eigen::Index>(partner)]);
            }
        }

        // CNOT: C_stage controls F.
        for (std::size_t idx = 0; idx < lay.total_dim; idx += 2) {
            Decoded d = decode(lay, idx);
            if ((d.c & c_bit) != 0) {
                std::swap(state.amps[static_cast<Eigen::Index>(idx)],
                          state.amps[static_cast<Eigen::Index>(idx + 1)]);
            }
        }
    }

    // Termination: flip C_{m+1} where C_1..C_m = 0.
    std::size_t term_bit = 1ULL << m;
    std::size_t low_mask = term_bit - 1;
    for (std::size_t idx = 0; idx < lay.total_dim; ++idx) {
        Decoded d = decode(lay, idx);
        if ((d.c & low_mask) == 0 && (d.c & term_bit) == 0) {
            std::size_t partner = idx + term_bit * lay.stride_c();
            std::swap(state.amps[static_cast<Eigen::Index>(idx)],
                      state.amps[static_cast<Eigen::Index>(partner)]);
        }
    }

    return state;
}

JointDistribution gate_joint_distribution(const GateState& state) {
    const int m = state.m;
    Layout lay;
    lay.n_arms = state.n_arms;
    lay.m = m;
    lay.grid = 1 << state.widths.grid_qubits;
    lay.reps = state.widths.reps;
    lay.p_digits = static_cast<std::size_t>(m) * lay.reps;
    lay.p_dim = 1;
    for (std::size_t d = 0; d < lay.p_digits; ++d) lay.p_dim *= lay.grid;
    lay.c_dim = 1ULL << (m + 1);
    lay.total_dim = static_cast<std::size_t>(state.n_arms) * 2 * lay.c_dim * lay.p_dim * 2;

    JointDistribution joint;
    joint.n_arms = state.n_arms;
    joint.m = m;
    joint.mass.assign(static_cast<std::size_t>(state.n_arms) * (m + 1) * 2, 0.0);

    for (std::size_t idx = 0; idx < lay.total_dim; ++idx) {
        double prob = std::norm(state.amps[static_cast<Eigen::Index>(idx)]);
        if (prob == 0.0) continue;
        Decoded d = decode(lay, idx);
        // C must be one-hot at this point; the slot is the set bit + 1.
        if (d.c == 0 || (d.c & (d.c - 1)) != 0) {
            throw std::runtime_error("gate_joint_distribution: clock register not unary");
        }
        int slot = 1;
        std::size_t c = d.c;
        while ((c & 1) == 0) {
            c >>= 1;
            ++slot;
        }
        joint.at(d.arm, slot, d.f) += prob;
    }
    return joint;
}

JointDistribution branch_joint_distribution(const VtaRun& run) {
    JointDistribution joint;
    joint.n_arms = run.state.n_arms;
    joint.m = run.params.m;
    joint.mass.assign(static_cast<std::size_t>(joint.n_arms) * (joint.m + 1) * 2, 0.0);
    for (const auto& c : run.state.components) {
        joint.at(c.arm, c.clock, c.flag) += std::norm(c.amp);
    }
    return joint;
}

double total_variation(const JointDistribution& a, const JointDistribution& b) {
    if (a.mass.size() != b.mass.size()) {
        throw std::invalid_argument("total_variation: shape mismatch");
    }
    double tv = 0.0;
    for (std::size_t k = 0; k < a.mass.size(); ++k) tv += std::abs(a.mass[k] - b.mass[k]);
    return tv / 2.0;
}

}  // namespace qbai
