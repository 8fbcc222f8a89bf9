#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghzsim/oracle.hpp"
#include "ghzsim/transcript.hpp"

namespace ghzsim {

struct TrialSummary {
    uint64_t trial_id = 0;
    std::vector<int> outcome;
    uint64_t random_bits = 0;
    uint64_t bits_to_leader = 0;
    uint64_t bits_from_leader = 0;
    uint64_t outer_rounds = 0;
    unsigned inner_k_final = 0;
    unsigned bernoulli_k_final = 0;
    uint64_t parallel_time_steps = 0;
};

struct CounterStats {
    double mean = 0;
    double stderr_mean = 0;
    double max = 0;
};

/// One expectation bound checked with finite-sample slack:
/// pass iff mean <= bound + 3 * stderr.
struct BudgetLine {
    std::string counter;
    CounterStats stats;
    double bound;
    bool pass;
};

struct BudgetReport {
    int n = 0;
    uint64_t trials = 0;
    std::vector<BudgetLine> lines;
    CounterStats total_bits;
    CounterStats parallel_time;
    bool all_pass = true;
};

TrialSummary summarize_run(uint64_t trial_id, const std::vector<int>& outcome,
                           const Transcript& t);

/// Bounds checked: random_bits <= 6n+14, bernoulli_k_final <= 4,
/// inner_k_final <= n+4, outer_rounds <= 2.
BudgetReport aggregate(int n, const std::vector<TrialSummary>& trials);

struct GofResult {
    double statistic = 0;
    double threshold = 0;
    int degrees = 0;
    bool pass = false;
    bool zero_cell_violation = false;  // observed mass on a zero-probability cell
};

/// Pearson chi-square of observed outcome counts (indexed like
/// OutcomeDistribution::table) against the oracle distribution at
/// significance 0.001. Cells with expected probability below 10/trials are
/// pooled; zero-probability cells are excluded but any observation there
/// fails outright.
GofResult gof_test(const std::vector<uint64_t>& counts, const OutcomeDistribution& expected);

std::string outcome_string(const std::vector<int>& x);     // e.g. "++-"
std::vector<int> outcome_from_string(const std::string&);  // inverse

void write_trials_csv(std::ostream& out, const std::vector<TrialSummary>& trials);
std::vector<TrialSummary> read_trials_csv(std::istream& in);

}  // namespace ghzsim
