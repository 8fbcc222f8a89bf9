// Conformance gate: runs every acceptance check and prints one verdict
// line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>

#include "ghzsim/verify.hpp"

int main() {
    using ghzsim::CriterionResult;
    CriterionResult (*checks[])() = {
        ghzsim::criterion_oracle_agreement,
        ghzsim::criterion_statistical_sampling,
        ghzsim::criterion_enumerative_sampling,
        ghzsim::criterion_random_bit_budget,
        ghzsim::criterion_loop_depth_budgets,
        ghzsim::criterion_communication_identities,
        ghzsim::criterion_scaling,
        ghzsim::criterion_tree_error_bound,
        ghzsim::criterion_equatorial_correlation,
        ghzsim::criterion_determinism,
    };
    bool all = true;
    for (auto* check : checks) {
        auto start = std::chrono::steady_clock::now();
        CriterionResult r = check();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        std::printf("[%s] %-26s (%5.1fs) %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), secs,
                    r.details.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
