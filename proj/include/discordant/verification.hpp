#pragma once

// Randomized self-consistency suites run by `discordant verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "discordant/discord_numeric.hpp"

namespace discordant {

struct VerifyOptions {
    int d = 2;
    std::uint64_t seed = 0;
    int count = 50;          // draws per side and suite
    int numeric_count = 3;   // numeric draws per side (d < 5 only)
    double perturbation_min = 1e-2;
    double perturbation_max = 1.5e-2;
    double tol = 1e-9;
    OptimizerConfig optimizer;
};

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    bool skipped = false;
    std::vector<std::string> failures;  // first few, for the report

    bool ok() const { return skipped || failed == 0; }
};

// Suites: generator-closure, criterion-equivalence, bell-theorem,
// perturbation-sensitivity, numeric. Throws PrimeRequired for composite d.
std::vector<SuiteResult> run_verification(const VerifyOptions& opts);

}  // namespace discordant
