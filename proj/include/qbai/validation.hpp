#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qbai {

enum class ValidationLevel { quick, full };

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Property suites behind `validate`: closed-form sandwich, threshold-bit
// guarantees, overlap inequality, shrink containment, and (full level)
// gate-level backend agreement.
std::vector<SuiteResult> run_validation(ValidationLevel level, std::uint64_t seed);

}  // namespace qbai
