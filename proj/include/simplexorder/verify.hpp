#pragma once

#include "simplexorder/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace simplexorder {

struct SuiteReport {
    int trials = 0;
    int passes = 0;
    double min_margin = 0.0;      // smallest strict margin seen across trials
    double worst_residual = 0.0;  // largest invariant residual seen
    std::vector<std::uint64_t> failed_seeds;

    bool passed() const { return passes == trials; }
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<int> dims;
    std::map<std::string, SuiteReport> suites;  // m1, m2, m3, m4
    bool all_passed = false;
};

// Runs `trials` trials per (suite, dimension); deterministic for a fixed
// (trials, dims, seed) regardless of the parallel flag.
VerificationReport run_verification(int trials, const std::vector<int>& dims,
                                    std::uint64_t seed, const TolerancePolicy& tol = {},
                                    bool parallel = false);

nlohmann::json report_to_json(const VerificationReport& report);

}  // namespace simplexorder
