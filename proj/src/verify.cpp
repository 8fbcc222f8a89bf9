#include "ghzsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ghzsim/accounting.hpp"
#include "ghzsim/enumerate.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/experiment.hpp"
#include "ghzsim/numerics.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/protocol.hpp"

namespace ghzsim {

namespace {

// The streaming protocol spends one extra guard bit per party in the
// Bernoulli phase (half-angle truncations at l = k + ceil(log2 n) + 1
// instead of l = k + ceil(log2 n)); the c/s stream needs none.
constexpr uint64_t kBernoulliGuardBits = 1;
constexpr uint64_t kCsGuardBits = 0;

MeasurementSet equatorial_set(int n, uint64_t seed) {
    MeasurementSet m = MeasurementSet::random(n, seed);
    for (auto& a : m.parties) a.phi = ExactAngle();
    return m;
}

uint64_t draw_uint(BitSource& src, unsigned bits) {
    uint64_t v = 0;
    for (unsigned i = 0; i < bits; ++i) v = (v << 1) | static_cast<uint64_t>(src.next_bit());
    return v;
}

CachedReal make_exact(const Dyadic& d) {
    return CachedReal([d](mpfr_prec_t prec) {
        Enclosure e(prec);
        d.set_mpfr(e.lo.get());
        d.set_mpfr(e.hi.get());
        return e;
    });
}

struct GridData {
    std::vector<TrialSummary> trials;
    uint64_t identity_violations = 0;
    std::string first_violation;
};

// Shared 10^4-run sequential batches for the budget and identity checks.
const std::map<int, GridData>& budget_grid() {
    static const std::map<int, GridData> grid = [] {
        std::map<int, GridData> g;
        for (int n : {2, 4, 8, 16}) {
            MeasurementSet m = MeasurementSet::random(n, 0xBEE5ull + static_cast<uint64_t>(n));
            ProtocolRunner runner(std::move(m));
            const uint64_t logn = ceil_log2(static_cast<unsigned>(n));
            GridData data;
            for (uint64_t trial = 0; trial < 10000; ++trial) {
                PrngSource src(0xB0D6E7ull + static_cast<uint64_t>(n), trial);
                RunResult res = runner.run(src);
                const Transcript& t = res.transcript;
                uint64_t cs = t.phase_bits(Phase::CsStream);
                uint64_t cs_expected = kCsGuardBits;
                for (unsigned kr : t.inner_k_per_round) {
                    cs_expected += 2ull * (n - 1) * (kr + 4 + logn);
                }
                uint64_t bern = t.phase_bits(Phase::Bernoulli);
                uint64_t bern_expected =
                    static_cast<uint64_t>(n - 1) *
                    (3 + t.bernoulli_k_final + logn + kBernoulliGuardBits);
                if (cs != cs_expected || bern != bern_expected) {
                    ++data.identity_violations;
                    if (data.first_violation.empty()) {
                        std::ostringstream msg;
                        msg << "n=" << n << " trial=" << trial << " cs=" << cs << "/"
                            << cs_expected << " bern=" << bern << "/" << bern_expected;
                        data.first_violation = msg.str();
                    }
                }
                data.trials.push_back(summarize_run(trial, res.outcome, t));
            }
            g.emplace(n, std::move(data));
        }
        return g;
    }();
    return grid;
}

mpq_class pow2_inv(unsigned k) {
    mpq_class q(1);
    mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(), k);
    return q;
}

mpq_class mass_of(const EnumerationResult& r, int label) {
    auto it = r.mass.find(label);
    return it == r.mass.end() ? mpq_class(0) : it->second;
}

}  // namespace

CriterionResult criterion_oracle_agreement() {
    const Dyadic tol = Dyadic::from_parts(+1, 1, 40);
    Dyadic worst;
    std::ostringstream details;
    bool pass = true;
    for (int n = 1; n <= 8; ++n) {
        for (int i = 0; i < 50; ++i) {
            MeasurementSet m =
                MeasurementSet::random(n, 0xA11CEull + 100ull * static_cast<uint64_t>(n) + i);
            OutcomeDistribution d = full_distribution(m);
            for (uint32_t idx = 0; idx < d.table.size(); ++idx) {
                Dyadic diff = d.table[idx] - trace_prob(m, outcome_from_index(n, idx));
                if (diff.cmp_abs(worst) > 0) worst = diff;
            }
        }
    }
    if (worst.cmp_abs(tol) > 0) pass = false;
    details << "max |decomposition - trace| = " << std::abs(worst.to_double())
            << " over 50 sets x n in 1..8 (tolerance 2^-40)";
    return {"oracle agreement", pass, details.str()};
}

CriterionResult criterion_statistical_sampling() {
    std::ostringstream details;
    bool pass = true;
    for (int n = 1; n <= 4; ++n) {
        int gof_passes = 0;
        int zero_cell_fails = 0;
        for (int set = 0; set < 20; ++set) {
            MeasurementSet m = MeasurementSet::random(
                n, 0x5E71ull + 100ull * static_cast<uint64_t>(n) + set);
            OutcomeDistribution expected = full_distribution(m);
            ProtocolRunner runner(std::move(m));
            std::vector<uint64_t> counts(expected.table.size(), 0);
            for (uint64_t trial = 0; trial < 100000; ++trial) {
                PrngSource src(0xC2ull + 1000ull * static_cast<uint64_t>(n) + set, trial);
                ++counts[outcome_index(runner.run(src).outcome)];
            }
            GofResult gof = gof_test(counts, expected);
            if (gof.zero_cell_violation) ++zero_cell_fails;
            if (gof.pass) ++gof_passes;
        }
        details << "n=" << n << ": " << gof_passes << "/20 gof, " << zero_cell_fails
                << " zero-cell hits; ";
        if (gof_passes < 18 || zero_cell_fails > 0) pass = false;
    }
    return {"statistical sampling", pass, details.str()};
}

CriterionResult criterion_enumerative_sampling() {
    // n=1, depth-30 tape enumeration, combined per phase: the outer loop
    // restarts with fresh bits, so the run distribution is
    // p(x) = sum_sigma P{B selects sigma} accept_sigma(x)/(1-reject_sigma).
    const std::vector<std::pair<std::string, std::string>> sets = {
        {"0", "0"}, {"0.25", "-0.5"}, {"0.375", "0.125"}};
    const unsigned depth = 30;
    const mpq_class tol = pow2_inv(20);
    const mpq_class slack = pow2_inv(20);  // undecided depth-30 tape mass stays below tol
    std::ostringstream details;
    bool pass = true;
    for (const auto& [th, ph] : sets) {
        MeasurementSet m = MeasurementSet::from_strings({th}, {ph}, AngleUnit::Radians);
        ProtocolRunner runner(m);
        EnumerationResult bern = enumerate_tapes(
            [&](BitSource& src) {
                Transcript t;
                return runner.bernoulli_phase(src, t);
            },
            depth);
        mpq_class unresolved = bern.unresolved;
        mpq_class p_hat[2] = {mpq_class(0), mpq_class(0)};
        for (int b : {0, 1}) {
            int sigma = b == 0 ? +1 : -1;
            EnumerationResult rounds = enumerate_tapes(
                [&](BitSource& src) {
                    Transcript t;
                    auto r = runner.single_round(sigma, src, t);
                    if (!r.accepted) return 2;
                    return r.outcome[0] > 0 ? 0 : 1;
                },
                depth);
            unresolved += rounds.unresolved;
            mpq_class keep = 1 - mass_of(rounds, 2);
            if (keep == 0) continue;
            for (int out : {0, 1}) {
                p_hat[out] += mass_of(bern, b) * mass_of(rounds, out) / keep;
            }
        }
        bool set_ok = unresolved < slack;
        for (int out : {0, 1}) {
            mpq_class target = ghz_prob(m, {out == 0 ? +1 : -1}).to_rational();
            mpq_class err = abs(p_hat[out] - target);
            set_ok = set_ok && err <= tol;
        }
        details << "(" << th << "," << ph << ") err+=" <<
            mpq_class(abs(p_hat[0] - ghz_prob(m, {+1}).to_rational())).get_d()
                << " unresolved=" << unresolved.get_d() << "; ";
        pass = pass && set_ok;
    }
    return {"enumerative sampling", pass, details.str()};
}

CriterionResult criterion_random_bit_budget() {
    std::ostringstream details;
    bool pass = true;
    for (const auto& [n, data] : budget_grid()) {
        BudgetReport r = aggregate(n, data.trials);
        for (const BudgetLine& l : r.lines) {
            if (l.counter != "random_bits") continue;
            details << "n=" << n << ": mean=" << l.stats.mean << " bound=" << l.bound << "; ";
            pass = pass && l.pass;
        }
    }
    return {"random-bit budget", pass, details.str()};
}

CriterionResult criterion_loop_depth_budgets() {
    std::ostringstream details;
    bool pass = true;
    for (const auto& [n, data] : budget_grid()) {
        BudgetReport r = aggregate(n, data.trials);
        details << "n=" << n << ":";
        for (const BudgetLine& l : r.lines) {
            if (l.counter == "random_bits") continue;
            details << " " << l.counter << "=" << l.stats.mean << "<=" << l.bound;
            pass = pass && l.pass;
        }
        details << "; ";
    }
    return {"loop-depth budgets", pass, details.str()};
}

CriterionResult criterion_communication_identities() {
    std::ostringstream details;
    bool pass = true;
    uint64_t total = 0;
    for (const auto& [n, data] : budget_grid()) {
        total += data.identity_violations;
        if (data.identity_violations > 0) {
            pass = false;
            details << data.first_violation << "; ";
        }
    }
    details << total << " violations over 4x10^4 runs (cs guard " << kCsGuardBits
            << ", bernoulli guard " << kBernoulliGuardBits << " bits/party)";
    return {"communication identities", pass, details.str()};
}

CriterionResult criterion_scaling() {
    const std::vector<int> sizes = {2, 4, 8, 16, 32};
    const uint64_t trials = 2000;
    struct Curve {
        const char* label;
        Variant variant;
        bool equatorial;
        bool time_metric;
        bool two_sided;  // Theta-claims bound growth both ways, O-claims above only
        double (*model)(int);
    };
    const Curve curves[] = {
        {"sequential bits ~ n^2", Variant::Sequential, false, false, true,
         [](int n) { return static_cast<double>(n) * n; }},
        {"equatorial bits ~ n log n", Variant::Equatorial, true, false, true,
         [](int n) { return n * std::log2(static_cast<double>(n)); }},
        {"parallel time O(n log n)", Variant::ParallelTree, false, true, false,
         [](int n) { return n * std::log2(static_cast<double>(n)); }},
    };
    std::ostringstream details;
    bool pass = true;
    for (const Curve& c : curves) {
        std::vector<double> means;
        for (int n : sizes) {
            uint64_t seed = 0x5CA1Eull + static_cast<uint64_t>(n);
            MeasurementSet m =
                c.equatorial ? equatorial_set(n, seed) : MeasurementSet::random(n, seed);
            ProtocolRunner runner(std::move(m), ProtocolConfig{c.variant});
            double acc = 0;
            for (uint64_t trial = 0; trial < trials; ++trial) {
                PrngSource src(seed ^ 0xF00Dull, trial);
                RunResult res = runner.run(src);
                acc += static_cast<double>(c.time_metric ? res.transcript.parallel_time_steps
                                                         : res.transcript.total_bits());
            }
            means.push_back(acc / static_cast<double>(trials));
        }
        details << c.label << ":";
        for (size_t i = 0; i + 1 < sizes.size(); ++i) {
            double measured = means[i + 1] / means[i];
            double modeled = c.model(sizes[i + 1]) / c.model(sizes[i]);
            double ratio = measured / modeled;
            details << " " << ratio;
            if (ratio > 1.5 || (c.two_sided && ratio < 1.0 / 1.5)) pass = false;
        }
        details << "; ";
    }
    return {"cost scaling", pass, details.str()};
}

CriterionResult criterion_tree_error_bound() {
    PrngSource src(0x7EEE);
    mpq_class worst_ratio = 0;  // |error| * 2^k, must stay <= 1
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(draw_uint(src, 6));           // 1..64
        const unsigned k = 1 + static_cast<unsigned>(draw_uint(src, 6) % 40);
        std::vector<CachedReal> owned;
        std::vector<const CachedReal*> leaves;
        mpq_class exact(1);
        for (int j = 0; j < n; ++j) {
            unsigned scale = static_cast<unsigned>(draw_uint(src, 6) % 61);
            mpz_class mant = 0;
            for (unsigned b = 0; b < scale; ++b) {
                mant <<= 1;
                mant += src.next_bit();
            }
            int sign = src.next_bit() ? -1 : +1;
            Dyadic leaf = Dyadic::from_parts(sign, mant, scale);  // |leaf| < 1
            exact *= leaf.to_rational();
            owned.push_back(make_exact(leaf));
        }
        for (const CachedReal& c : owned) leaves.push_back(&c);
        Dyadic got = tree_reduce_product(leaves, k);
        mpq_class err = abs(got.to_rational() - exact);
        mpz_mul_2exp(err.get_num().get_mpz_t(), err.get_num().get_mpz_t(), k);
        err.canonicalize();
        if (err > worst_ratio) worst_ratio = err;
    }
    std::ostringstream details;
    details << "worst |error|*2^k = " << worst_ratio.get_d() << " over 1000 trees (n<=64, k<=40)";
    return {"tree product error bound", worst_ratio <= 1, details.str()};
}

CriterionResult criterion_equatorial_correlation() {
    const uint64_t trials = 20000;
    std::ostringstream details;
    bool pass = true;
    for (int n : {3, 5, 8}) {
        for (int set = 0; set < 10; ++set) {
            MeasurementSet m =
                equatorial_set(n, 0xE0A7ull + 100ull * static_cast<uint64_t>(n) + set);
            double target = equatorial_correlation(m).to_double();
            ProtocolRunner runner(std::move(m), ProtocolConfig{Variant::Equatorial});
            double parity_sum = 0;
            std::vector<double> marginal(n, 0);
            for (uint64_t trial = 0; trial < trials; ++trial) {
                PrngSource src(0xC0AAull + 17ull * set + static_cast<uint64_t>(n), trial);
                RunResult res = runner.run(src);
                int parity = 1;
                for (int j = 0; j < n; ++j) {
                    parity *= res.outcome[j];
                    marginal[j] += res.outcome[j];
                }
                parity_sum += parity;
            }
            double corr = parity_sum / static_cast<double>(trials);
            double sigma = std::sqrt(std::max(1e-12, 1 - target * target) /
                                     static_cast<double>(trials));
            if (std::abs(corr - target) > 4 * sigma) {
                pass = false;
                details << "corr miss n=" << n << " set=" << set << " (" << corr << " vs "
                        << target << "); ";
            }
            double msigma = 1.0 / std::sqrt(static_cast<double>(trials));
            for (int j = 0; j < n; ++j) {
                if (std::abs(marginal[j] / static_cast<double>(trials)) > 4 * msigma) {
                    pass = false;
                    details << "marginal miss n=" << n << " set=" << set << " j=" << j << "; ";
                }
            }
        }
    }
    if (pass) details << "30 equatorial sets: correlation and marginals within 4 sigma";
    return {"equatorial correlation", pass, details.str()};
}

CriterionResult criterion_determinism() {
    ExperimentConfig cfg;
    cfg.theta = {"0.25", "0.125", "0.0625"};
    cfg.phi = {"0.1", "-0.2", "0"};
    cfg.unit = "rad";
    cfg.variant = "sequential";
    cfg.trials = 2000;
    cfg.seed = 99;
    ExperimentOutput a = run_experiment(cfg);
    ExperimentOutput b = run_experiment(cfg);
    bool pass = a.trials_csv == b.trials_csv && a.summary_json == b.summary_json;
    cfg.variant = "doubling";
    ExperimentOutput c = run_experiment(cfg);
    ExperimentOutput d = run_experiment(cfg);
    pass = pass && c.trials_csv == d.trials_csv && c.summary_json == d.summary_json;
    return {"determinism", pass,
            pass ? "byte-identical trials.csv and summary.json on reruns"
                 : "reruns differ"};
}

std::vector<CriterionResult> run_all_criteria() {
    return {
        criterion_oracle_agreement(),
        criterion_statistical_sampling(),
        criterion_enumerative_sampling(),
        criterion_random_bit_budget(),
        criterion_loop_depth_budgets(),
        criterion_communication_identities(),
        criterion_scaling(),
        criterion_tree_error_bound(),
        criterion_equatorial_correlation(),
        criterion_determinism(),
    };
}

}  // namespace ghzsim
