#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbai/gate_sim.hpp"

using namespace qbai;

namespace {

double backend_tv(const std::vector<double>& p, double l2, double l1, double alpha,
                  const GateRegisterWidths& widths) {
    BanditInstance inst = make_instance(p);
    GateState gate = gate_level_run(inst, l2, l1, alpha, widths);
    VtaParams params = VtaParams::make(l2, l1, alpha, inst.n_arms());
    VtaRun run = run_vta(inst, params, widths.qpe_config());
    return total_variation(gate_joint_distribution(gate),
                           branch_joint_distribution(run));
}

}  // namespace

TEST_CASE("gate and branch backends agree on the joint distribution") {
    CHECK(backend_tv({0.8, 0.2}, 0.4, 0.7, 0.1, {2, 1}) <= 1e-9);
    CHECK(backend_tv({0.8, 0.2}, 0.4, 0.7, 0.1, {3, 1}) <= 1e-9);
    CHECK(backend_tv({0.6, 0.3, 0.1}, 0.3, 0.65, 0.2, {2, 1}) <= 1e-9);
    CHECK(backend_tv({0.9, 0.5}, 0.45, 0.8, 0.05, {3, 1}) <= 1e-9);
    CHECK(backend_tv({0.7}, 0.25, 0.8, 0.1, {2, 3}) <= 1e-9);
}

TEST_CASE("single arm above l1 keeps the flag set") {
    BanditInstance inst = make_instance({0.9});
    GateState gate = gate_level_run(inst, 0.3, 0.6, 0.1, {3, 1});
    JointDistribution joint = gate_joint_distribution(gate);
    double flag1 = 0.0;
    for (int slot = 1; slot <= joint.m + 1; ++slot) flag1 += joint.at(0, slot, 1);
    CHECK(flag1 >= 0.9);
}

TEST_CASE("flag-1 probability matches the closed form") {
    // S_> = {arm 0}, S_< = {arm 1}: psucc' = 1/2.
    BanditInstance inst = make_instance({0.9, 0.1});
    GateState gate = gate_level_run(inst, 0.4, 0.6, 0.1, {3, 1});
    JointDistribution joint = gate_joint_distribution(gate);
    double flag1 = 0.0;
    for (int arm = 0; arm < 2; ++arm) {
        for (int slot = 1; slot <= joint.m + 1; ++slot) flag1 += joint.at(arm, slot, 1);
    }
    CHECK(flag1 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("qubit budget violations name the offending register") {
    BanditInstance inst = make_instance({0.9, 0.1});
    try {
        gate_level_run(inst, 0.58, 0.6, 0.1, {8, 5});
        FAIL("expected qubit budget error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("register P") != std::string::npos);
    }
}

TEST_CASE("total_variation basics") {
    BanditInstance inst = make_instance({0.8, 0.2});
    GateState gate = gate_level_run(inst, 0.4, 0.7, 0.1, {2, 1});
    JointDistribution joint = gate_joint_distribution(gate);
    CHECK(total_variation(joint, joint) == doctest::Approx(0.0));
}
