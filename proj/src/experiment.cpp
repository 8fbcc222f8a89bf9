#include "ghzsim/experiment.hpp"

#include <json.hpp>

#include <sstream>

#include "ghzsim/errors.hpp"
#include "ghzsim/oracle.hpp"

namespace ghzsim {

using nlohmann::json;

MeasurementSet ExperimentConfig::measurement() const {
    return MeasurementSet::from_strings(theta, phi, angle_unit());
}

AngleUnit ExperimentConfig::angle_unit() const {
    if (unit == "rad") return AngleUnit::Radians;
    if (unit == "pi") return AngleUnit::Pi;
    throw ConfigError("unit must be 'rad' or 'pi', got '" + unit + "'");
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.theta = j.at("theta").get<std::vector<std::string>>();
    cfg.phi = j.at("phi").get<std::vector<std::string>>();
    cfg.unit = j.value("unit", cfg.unit);
    cfg.variant = j.value("variant", cfg.variant);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.kmax = j.value("kmax", cfg.kmax);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["theta"] = cfg.theta;
    j["phi"] = cfg.phi;
    j["unit"] = cfg.unit;
    j["variant"] = cfg.variant;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["kmax"] = cfg.kmax;
    return j.dump(2) + "\n";
}

namespace {

json stats_json(const CounterStats& s) {
    return json{{"mean", s.mean}, {"stderr", s.stderr_mean}, {"max", s.max}};
}

json probability_json(const Dyadic& p) {
    return json{{"value", p.to_double()}, {"exact", p.to_string()}};
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    MeasurementSet m = cfg.measurement();
    ProtocolConfig pcfg{variant_from_string(cfg.variant), cfg.kmax};
    ProtocolRunner runner(m, pcfg);
    ExperimentOutput out;
    out.trials.reserve(cfg.trials);
    for (uint64_t i = 0; i < cfg.trials; ++i) {
        PrngSource src(cfg.seed, i);
        RunResult res = runner.run(src);
        out.trials.push_back(summarize_run(i, res.outcome, res.transcript));
    }

    BudgetReport budget = aggregate(m.n(), out.trials);
    out.conformance_pass = budget.all_pass;

    json summary;
    summary["config"] = json::parse(config_to_json(cfg));
    summary["trials"] = budget.trials;
    summary["n"] = budget.n;
    json lines = json::array();
    for (const BudgetLine& l : budget.lines) {
        lines.push_back({{"counter", l.counter},
                         {"stats", stats_json(l.stats)},
                         {"bound", l.bound},
                         {"pass", l.pass}});
    }
    summary["budget"] = lines;
    summary["budget_pass"] = budget.all_pass;
    summary["total_bits"] = stats_json(budget.total_bits);
    summary["parallel_time_steps"] = stats_json(budget.parallel_time);

    if (m.n() <= kMaxEnumParties && cfg.trials >= 100ull * (1ull << m.n())) {
        OutcomeDistribution expected = full_distribution(m);
        std::vector<uint64_t> counts(expected.table.size(), 0);
        for (const TrialSummary& t : out.trials) ++counts[outcome_index(t.outcome)];
        GofResult gof = gof_test(counts, expected);
        json cells = json::array();
        for (size_t i = 0; i < counts.size(); ++i) {
            cells.push_back({{"outcome", outcome_string(outcome_from_index(m.n(), i))},
                             {"observed", counts[i]},
                             {"expected", probability_json(expected.table[i])}});
        }
        summary["empirical_vs_oracle"] = cells;
        summary["gof"] = {{"statistic", gof.statistic},
                          {"threshold", gof.threshold},
                          {"degrees", gof.degrees},
                          {"zero_cell_violation", gof.zero_cell_violation},
                          {"pass", gof.pass}};
        out.conformance_pass = out.conformance_pass && gof.pass;
    }
    summary["conformance_pass"] = out.conformance_pass;
    out.summary_json = summary.dump(2) + "\n";

    std::ostringstream csv;
    write_trials_csv(csv, out.trials);
    out.trials_csv = csv.str();
    return out;
}

std::string oracle_report_json(const MeasurementSet& m) {
    OutcomeDistribution d = full_distribution(m);
    json table = json::array();
    Dyadic max_disc;
    Dyadic sum;
    for (size_t i = 0; i < d.table.size(); ++i) {
        std::vector<int> x = outcome_from_index(m.n(), static_cast<uint32_t>(i));
        Dyadic alt = trace_prob(m, x);
        Dyadic diff = d.table[i] - alt;
        if (diff.cmp_abs(max_disc) > 0) max_disc = diff;
        sum = sum + d.table[i];
        table.push_back({{"outcome", outcome_string(x)},
                         {"decomposition", probability_json(d.table[i])},
                         {"trace", probability_json(alt)}});
    }
    json j;
    j["n"] = m.n();
    j["table"] = table;
    j["max_discrepancy"] = std::abs(max_disc.to_double());
    j["normalization"] = probability_json(sum);
    j["entropy_bits"] = entropy_bits(d);
    if (m.equatorial()) j["correlation"] = probability_json(equatorial_correlation(m));
    return j.dump(2) + "\n";
}

}  // namespace ghzsim
