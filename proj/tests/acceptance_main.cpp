// Acceptance gate: runs the full-level verification checks, one line per
// criterion. With no arguments all twelve run in order; otherwise each
// argument selects one criterion by number (1-12). Exits nonzero if any
// selected criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "stopsmith/verify.hpp"

int main(int argc, char** argv) {
    using namespace stopsmith;

    const auto& names = verification_check_names();
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(names.size())) {
            std::fprintf(stderr, "criterion number out of range: %s (1..%zu)\n", argv[i],
                         names.size());
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty())
        for (int k = 1; k <= static_cast<int>(names.size()); ++k) selected.push_back(k);

    std::uint64_t seed = 1729;
    if (const char* env = std::getenv("STOPSMITH_ACCEPTANCE_SEED")) seed = std::strtoull(env, nullptr, 10);

    int failures = 0;
    for (const int k : selected) {
        const CheckResult r = run_verification_check(names[static_cast<std::size_t>(k) - 1],
                                                     VerifyLevel::Full, seed, 0);
        if (!r.pass) ++failures;
        std::printf("criterion %02d [%s] %-26s %s (%.2fs)\n", k, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
