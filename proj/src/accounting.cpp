#include "ghzsim/accounting.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

template <typename Get>
CounterStats stats_of(const std::vector<TrialSummary>& trials, Get get) {
    CounterStats s;
    double sum = 0, sumsq = 0;
    for (const TrialSummary& t : trials) {
        double v = static_cast<double>(get(t));
        sum += v;
        sumsq += v * v;
        if (v > s.max) s.max = v;
    }
    const double n = static_cast<double>(trials.size());
    s.mean = sum / n;
    if (trials.size() > 1) {
        double var = (sumsq - sum * sum / n) / (n - 1);
        if (var < 0) var = 0;
        s.stderr_mean = std::sqrt(var / n);
    }
    return s;
}

}  // namespace

TrialSummary summarize_run(uint64_t trial_id, const std::vector<int>& outcome,
                           const Transcript& t) {
    TrialSummary s;
    s.trial_id = trial_id;
    s.outcome = outcome;
    s.random_bits = t.random_bits;
    s.bits_to_leader = t.bits_to_leader;
    s.bits_from_leader = t.bits_from_leader;
    s.outer_rounds = t.outer_rounds;
    s.inner_k_final = t.inner_k_final;
    s.bernoulli_k_final = t.bernoulli_k_final;
    s.parallel_time_steps = t.parallel_time_steps;
    return s;
}

BudgetReport aggregate(int n, const std::vector<TrialSummary>& trials) {
    if (trials.empty()) throw ConfigError("aggregate needs at least one trial");
    BudgetReport r;
    r.n = n;
    r.trials = trials.size();
    auto add = [&r](std::string counter, CounterStats s, double bound) {
        bool pass = s.mean <= bound + 3 * s.stderr_mean;
        r.all_pass = r.all_pass && pass;
        r.lines.push_back({std::move(counter), s, bound, pass});
    };
    add("random_bits", stats_of(trials, [](const auto& t) { return t.random_bits; }),
        6.0 * n + 14);
    add("bernoulli_k_final", stats_of(trials, [](const auto& t) { return t.bernoulli_k_final; }),
        4);
    add("inner_k_final", stats_of(trials, [](const auto& t) { return t.inner_k_final; }),
        n + 4.0);
    add("outer_rounds", stats_of(trials, [](const auto& t) { return t.outer_rounds; }), 2);
    r.total_bits =
        stats_of(trials, [](const auto& t) { return t.bits_to_leader + t.bits_from_leader; });
    r.parallel_time = stats_of(trials, [](const auto& t) { return t.parallel_time_steps; });
    return r;
}

GofResult gof_test(const std::vector<uint64_t>& counts, const OutcomeDistribution& expected) {
    if (counts.size() != expected.table.size()) throw ConfigError("count table size mismatch");
    uint64_t trials = 0;
    for (uint64_t c : counts) trials += c;
    if (trials < 100ull * expected.table.size()) {
        throw InsufficientSamples("need at least " + std::to_string(100 * expected.table.size()) +
                                  " samples, got " + std::to_string(trials));
    }
    GofResult r;
    const double total = static_cast<double>(trials);
    const double pool_below = 10.0 / total;
    double pooled_exp = 0, pooled_obs = 0;
    int cells = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        double p = expected.table[i].to_double();
        if (p <= 0) {
            if (counts[i] > 0) r.zero_cell_violation = true;
            continue;
        }
        if (p < pool_below) {
            pooled_exp += p;
            pooled_obs += static_cast<double>(counts[i]);
            continue;
        }
        double e = p * total;
        double d = static_cast<double>(counts[i]) - e;
        r.statistic += d * d / e;
        ++cells;
    }
    if (pooled_exp > 0) {
        double e = pooled_exp * total;
        double d = pooled_obs - e;
        r.statistic += d * d / e;
        ++cells;
    }
    r.degrees = cells - 1;
    if (r.degrees <= 0) {
        r.pass = !r.zero_cell_violation && r.statistic == 0;
        return r;
    }
    boost::math::chi_squared dist(r.degrees);
    r.threshold = boost::math::quantile(dist, 0.999);
    r.pass = !r.zero_cell_violation && r.statistic <= r.threshold;
    return r;
}

std::string outcome_string(const std::vector<int>& x) {
    std::string s;
    s.reserve(x.size());
    for (int v : x) s.push_back(v > 0 ? '+' : '-');
    return s;
}

std::vector<int> outcome_from_string(const std::string& s) {
    std::vector<int> x;
    x.reserve(s.size());
    for (char c : s) {
        if (c != '+' && c != '-') throw ConfigError("bad outcome string: " + s);
        x.push_back(c == '+' ? +1 : -1);
    }
    return x;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialSummary>& trials) {
    out << "trial_id,outcome,random_bits,bits_to_leader,bits_from_leader,outer_rounds,"
           "inner_k_final,bernoulli_k_final,parallel_time_steps\n";
    for (const TrialSummary& t : trials) {
        out << t.trial_id << ',' << outcome_string(t.outcome) << ',' << t.random_bits << ','
            << t.bits_to_leader << ',' << t.bits_from_leader << ',' << t.outer_rounds << ','
            << t.inner_k_final << ',' << t.bernoulli_k_final << ',' << t.parallel_time_steps
            << '\n';
    }
}

std::vector<TrialSummary> read_trials_csv(std::istream& in) {
    std::vector<TrialSummary> trials;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty trials CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        TrialSummary t;
        auto next = [&]() {
            if (!std::getline(row, field, ',')) throw ConfigError("short CSV row: " + line);
            return field;
        };
        t.trial_id = std::stoull(next());
        t.outcome = outcome_from_string(next());
        t.random_bits = std::stoull(next());
        t.bits_to_leader = std::stoull(next());
        t.bits_from_leader = std::stoull(next());
        t.outer_rounds = std::stoull(next());
        t.inner_k_final = static_cast<unsigned>(std::stoul(next()));
        t.bernoulli_k_final = static_cast<unsigned>(std::stoul(next()));
        t.parallel_time_steps = std::stoull(next());
        trials.push_back(std::move(t));
    }
    return trials;
}

}  // namespace ghzsim
