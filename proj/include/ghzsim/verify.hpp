#pragma once

#include <string>
#include <vector>

namespace ghzsim {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string details;
};

/// The conformance suite. Each check pins its own parameters (grids,
/// trial counts, seeds, tolerances) so results are reproducible.
CriterionResult criterion_oracle_agreement();         // two oracles within 2^-40
CriterionResult criterion_statistical_sampling();     // chi-square vs oracle, n = 1..4
CriterionResult criterion_enumerative_sampling();     // exact tape-mass vs oracle, n = 1
CriterionResult criterion_random_bit_budget();        // mean random bits <= 6n+14
CriterionResult criterion_loop_depth_budgets();       // k_B <= 4, k <= n+4, rounds <= 2
CriterionResult criterion_communication_identities(); // closed-form bit counts, exact
CriterionResult criterion_scaling();                  // n^2 / n log n ratio tests
CriterionResult criterion_tree_error_bound();         // truncated tree product vs rational
CriterionResult criterion_equatorial_correlation();   // E[prod x] = cos(sum theta)
CriterionResult criterion_determinism();              // byte-identical reruns

std::vector<CriterionResult> run_all_criteria();

}  // namespace ghzsim
