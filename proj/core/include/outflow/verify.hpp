#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "outflow/config.hpp"

namespace outflow {

// Randomized inequality certifiers, seeded and deterministic: the report is
// byte-identical for identical (spec, seed).
struct VerifyCheck {
    std::string name;
    long samples = 0;
    bool pass = false;
    double worst = 0.0; // worst margin or worst relative deviation
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = false;
    std::string render() const; // deterministic text form
};

VerifyReport run_verification(const RunSpec& spec);

} // namespace outflow
