#pragma once

#include <Eigen/Dense>

#include "qbai/amp_est.hpp"
#include "qbai/oracle.hpp"
#include "qbai/vta.hpp"

namespace qbai {

// Explicit register widths for the gate-level execution: each of the m
// stages carries `reps` phase registers of `grid_qubits` qubits each.
struct GateRegisterWidths {
    int grid_qubits = 2;  // M = 2^grid_qubits
    int reps = 1;

    QpeConfig qpe_config() const { return {1 << grid_qubits, reps}; }
};

// Dense statevector over the explicit registers I, B, C, P, F.
struct GateState {
    Eigen::VectorXcd amps;
    int n_arms = 0;
    int m = 0;
    GateRegisterWidths widths;
};

// Joint (arm, clock-slot, flag) distribution; slots run 1..m+1.
struct JointDistribution {
    int n_arms = 0;
    int m = 0;
    std::vector<double> mass;

    double& at(int arm, int slot, int flag) {
        return mass[(static_cast<std::size_t>(arm) * (m + 1) + (slot - 1)) * 2 + flag];
    }
    double at(int arm, int slot, int flag) const {
        return mass[(static_cast<std::size_t>(arm) * (m + 1) + (slot - 1)) * 2 + flag];
    }
};

// Executes the variable-time circuit gate by gate with explicit
// phase-estimation ancillas.
// Enforces a 26-qubit budget. Used only to validate the branch backend.
GateState gate_level_run(const BanditInstance& instance, double l2, double l1,
                         double alpha, const GateRegisterWidths& widths);

JointDistribution gate_joint_distribution(const GateState& state);
JointDistribution branch_joint_distribution(const VtaRun& run);

double total_variation(const JointDistribution& a, const JointDistribution& b);

}  // namespace qbai
