#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghzsim/accounting.hpp"
#include "ghzsim/angle.hpp"
#include "ghzsim/protocol.hpp"

namespace ghzsim {

/// One sampling experiment as specified on the command line or in a JSON
/// config file. Angle strings are kept verbatim so a parse/serialize
/// round-trip is the identity.
struct ExperimentConfig {
    std::vector<std::string> theta;
    std::vector<std::string> phi;
    std::string unit = "rad";  // "rad" or "pi"
    std::string variant = "sequential";
    uint64_t trials = 1000;
    uint64_t seed = 0;
    unsigned kmax = kDefaultDepthCap;

    int n() const { return static_cast<int>(theta.size()); }
    MeasurementSet measurement() const;
    AngleUnit angle_unit() const;  // ConfigError on bad unit
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct ExperimentOutput {
    std::vector<TrialSummary> trials;
    std::string trials_csv;
    std::string summary_json;
    bool conformance_pass = true;
};

/// Runs cfg.trials protocol samples with per-trial seed splitting and
/// aggregates them; includes a goodness-of-fit check against the oracle
/// whenever the outcome table is enumerable and the sample is large enough.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// Both oracle tables, their maximum discrepancy, and derived quantities.
std::string oracle_report_json(const MeasurementSet& m);

}  // namespace ghzsim
