#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbai/oracle.hpp"

namespace qbai {

struct SweepSpec {
    std::string family = "uniform-gap";  // uniform-gap | geometric-gap | two-cluster | from-file
    std::vector<int> n_values = {2, 2, 4, 4, 8, 8, 16};
    std::vector<double> delta2_values = {0.25,     0.125,     0.0625,    0.03125,
                                         0.015625, 0.0078125, 0.00390625};
    bool paired = true;  // zip n_values with delta2_values instead of the product grid
    double p1 = 0.75;
    double gamma = 1.5;  // geometric-gap ratio
    double delta = 0.05;
    int trials = 3;
    std::uint64_t seed = 1;
    std::string file;  // from-file family
};

struct SweepRow {
    std::string instance_id;
    int n = 0;
    double H = 0.0;
    double delta2 = 0.0;
    double delta = 0.0;
    double modeled_quantum_cost = 0.0;
    std::uint64_t raw_oracle_calls = 0;
    std::uint64_t classical_se_pulls = 0;
    std::uint64_t classical_naive_pulls = 0;
    double lower_bound = 0.0;
    bool success = false;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double quantum_slope = 0.0;
    double se_slope = 0.0;
    double h_decades = 0.0;
    bool bound_consistent = true;  // lower_bound <= modeled cost on every row
};

extern const char* const kSweepCsvHeader;

BanditInstance make_family_instance(const std::string& family, int n, double delta2,
                                    double p1, double gamma);

// Largest p_floor compatible with the instance (capped below 1/2).
double instance_p_floor(const BanditInstance& instance);

SweepResult run_sweep(const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// OLS slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Parallelism cap: QBAI_THREADS when set, hardware concurrency otherwise.
int thread_cap();

}  // namespace qbai
