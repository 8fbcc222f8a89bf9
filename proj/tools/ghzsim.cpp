#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ghzsim/errors.hpp"
#include "ghzsim/experiment.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/verify.hpp"

namespace fs = std::filesystem;
using ghzsim::ExperimentConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNonconformant = 2;

struct CommonOpts {
    ExperimentConfig cfg;
    std::string config_path;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o, int& n_flag) {
    cmd->add_option("--config", o.config_path, "JSON config file; explicit flags override it");
    cmd->add_option("--n", n_flag, "party count (validated against the angle lists)");
    cmd->add_option("--theta", o.cfg.theta, "azimuthal angles, one per party")->delimiter(',');
    cmd->add_option("--phi", o.cfg.phi, "elevation angles, one per party")->delimiter(',');
    cmd->add_option("--unit", o.cfg.unit, "angle unit: rad or pi");
    cmd->add_option("--variant", o.cfg.variant,
                    "sequential | doubling | constant-round | parallel | equatorial");
    cmd->add_option("--trials", o.cfg.trials, "number of protocol runs");
    cmd->add_option("--seed", o.cfg.seed, "64-bit base seed; trial i uses the (seed, i) split");
    cmd->add_option("--kmax", o.cfg.kmax, "iteration cap before DepthExceeded");
    cmd->add_option("--out-dir", o.out_dir, "directory for output files (default: stdout)");
}

// Start from the config file when given, then re-apply whatever flags the
// user passed explicitly on top of it.
ExperimentConfig resolve(const CLI::App* cmd, const CommonOpts& o, int n_flag) {
    ExperimentConfig cfg = o.cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw ghzsim::ConfigError("cannot open config file: " + o.config_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        ExperimentConfig base = ghzsim::config_from_json(text);
        auto given = [cmd](const char* name) { return cmd->count(name) > 0; };
        if (!given("--theta")) cfg.theta = base.theta;
        if (!given("--phi")) cfg.phi = base.phi;
        if (!given("--unit")) cfg.unit = base.unit;
        if (!given("--variant")) cfg.variant = base.variant;
        if (!given("--trials")) cfg.trials = base.trials;
        if (!given("--seed")) cfg.seed = base.seed;
        if (!given("--kmax")) cfg.kmax = base.kmax;
    }
    if (cfg.theta.empty()) throw ghzsim::ConfigError("no angles given (--theta/--phi or --config)");
    if (cfg.theta.size() != cfg.phi.size()) {
        throw ghzsim::ConfigError("theta and phi lists must have the same length");
    }
    if (n_flag > 0 && n_flag != cfg.n()) {
        throw ghzsim::ConfigError("--n disagrees with the angle list length");
    }
    return cfg;
}

void emit(const std::string& out_dir, const std::string& filename, const std::string& content) {
    if (out_dir.empty()) {
        std::cout << "# " << filename << "\n" << content;
        return;
    }
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / filename, std::ios::binary);
    out << content;
    if (!out) throw ghzsim::ConfigError("failed writing " + filename + " under " + out_dir);
}

int cmd_sample(const CLI::App* cmd, const CommonOpts& o, int n_flag) {
    ExperimentConfig cfg = resolve(cmd, o, n_flag);
    ghzsim::ExperimentOutput out = ghzsim::run_experiment(cfg);
    emit(o.out_dir, "trials.csv", out.trials_csv);
    emit(o.out_dir, "summary.json", out.summary_json);
    return out.conformance_pass ? kExitOk : kExitNonconformant;
}

int cmd_oracle(const CLI::App* cmd, const CommonOpts& o, int n_flag) {
    ExperimentConfig cfg = resolve(cmd, o, n_flag);
    emit(o.out_dir, "oracle.json", ghzsim::oracle_report_json(cfg.measurement()));
    return kExitOk;
}

int cmd_verify(const std::string& out_dir) {
    nlohmann::json report = nlohmann::json::array();
    bool all = true;
    for (const ghzsim::CriterionResult& r : ghzsim::run_all_criteria()) {
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.details << "\n";
        report.push_back({{"name", r.name}, {"pass", r.pass}, {"details", r.details}});
        all = all && r.pass;
    }
    emit(out_dir, "verify.json", report.dump(2) + "\n");
    return all ? kExitOk : kExitNonconformant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact sampler for joint measurement outcomes on the n-party GHZ state,\n"
                 "with bit-level communication and randomness accounting"};
    app.require_subcommand(1);

    CommonOpts sample_opts, oracle_opts;
    int sample_n = 0, oracle_n = 0;
    CLI::App* sample = app.add_subcommand("sample", "run protocol trials, write CSV + summary");
    add_common(sample, sample_opts, sample_n);
    CLI::App* oracle = app.add_subcommand("oracle", "write the exact outcome distribution");
    add_common(oracle, oracle_opts, oracle_n);
    std::string verify_out;
    CLI::App* verify = app.add_subcommand("verify", "run the conformance suite");
    verify->add_option("--out-dir", verify_out, "directory for verify.json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(sample, sample_opts, sample_n);
        if (oracle->parsed()) return cmd_oracle(oracle, oracle_opts, oracle_n);
        return cmd_verify(verify_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
