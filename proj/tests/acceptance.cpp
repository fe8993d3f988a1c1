// Acceptance gate: runs every structural verification end to end and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "qweyl/verify.hpp"

int main() {
    using Clock = std::chrono::steady_clock;
    std::vector<std::function<qweyl::CheckResult()>> checks = {
        [] { return qweyl::check_algebra_construction(); },
        [] { return qweyl::check_root_data(); },
        [] { return qweyl::check_pbw_identities(); },
        [] { return qweyl::check_garland_membership(); },
        [] { return qweyl::check_clifford_layer(); },
        [] { return qweyl::check_top_annihilation(); },
        [] { return qweyl::check_defining_module_iso(); },
        [] { return qweyl::check_local_weyl_finiteness(); },
        [] { return qweyl::check_base_field_consistency(); },
        [] { return qweyl::check_tensor_factorization(); },
        [] { return qweyl::check_cone_truncation(); },
    };
    bool all = true;
    for (auto& run : checks) {
        auto t0 = Clock::now();
        qweyl::CheckResult r = run();
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("%s  %-55s  %6.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), secs,
                    r.detail.c_str());
        if (!r.pass) all = false;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: failures present");
    return all ? 0 : 1;
}
