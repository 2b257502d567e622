#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tfw/green.hpp"

namespace tfw {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::string only_suite;                 // empty runs everything
    bool inject_poisson_sign_error = false; // test-harness hook: poisons one check
    GreenEvalConfig green;
};

/// Run the oracle/invariant suite; one result per named check.
std::vector<CheckResult> run_validation(const ValidationOptions& opts);

}  // namespace tfw
