#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qbai {

// Oracle-call accounting. `oracle_calls` counts raw O / O-dagger invocations
// in the executed circuits; `modeled_cost` accumulates the variable-time
// cost formulas charged by Amplify/Estimate.
struct QueryLedger {
    std::uint64_t oracle_calls = 0;
    double modeled_cost = 0.0;
    std::map<std::string, std::uint64_t> breakdown;

    void charge(const std::string& subroutine, std::uint64_t calls) {
        oracle_calls += calls;
        breakdown[subroutine] += calls;
    }

    void add_modeled(double cost) { modeled_cost += cost; }

    void merge(const QueryLedger& other) {
        oracle_calls += other.oracle_calls;
        modeled_cost += other.modeled_cost;
        for (const auto& [name, calls] : other.breakdown) breakdown[name] += calls;
    }

    std::uint64_t breakdown_total() const {
        std::uint64_t total = 0;
        for (const auto& [name, calls] : breakdown) total += calls;
        return total;
    }
};

}  // namespace qbai
