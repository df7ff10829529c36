#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stopsmith {

// quick: small-n oracles and 1e4-trial simulations, suitable for CI.
// full: the complete gate (1e6-trial simulations, n up to 1e5 sweeps).
enum class VerifyLevel { Quick, Full };

VerifyLevel parse_verify_level(const std::string& text);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Check names in execution order.
const std::vector<std::string>& verification_check_names();

CheckResult run_verification_check(const std::string& name, VerifyLevel level,
                                   std::uint64_t seed, int threads);

std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed,
                                          int threads);

}  // namespace stopsmith
