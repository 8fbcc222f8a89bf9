#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "ghzsim/accounting.hpp"
#include "ghzsim/bits.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/numerics.hpp"
#include "ghzsim/oracle.hpp"
#include "ghzsim/protocol.hpp"

using namespace ghzsim;

TEST_CASE("variant names round trip") {
    for (Variant v : {Variant::Sequential, Variant::Doubling, Variant::ConstantRound,
                      Variant::ParallelTree, Variant::Equatorial}) {
        CHECK(variant_from_string(variant_name(v)) == v);
    }
    CHECK_THROWS_AS(variant_from_string("bogus"), ConfigError);
}

TEST_CASE("point mass measurement always yields the certain outcome") {
    MeasurementSet m = MeasurementSet::from_strings({"0"}, {"0"}, AngleUnit::Radians);
    ProtocolRunner runner(m);
    for (uint64_t t = 0; t < 100; ++t) {
        PrngSource src(17, t);
        CHECK(runner.run(src).outcome == std::vector<int>{+1});
    }
}

TEST_CASE("all-X measurement only ever emits even parity") {
    MeasurementSet m =
        MeasurementSet::from_strings({"0", "0", "0"}, {"0", "0", "0"}, AngleUnit::Radians);
    ProtocolRunner runner(m);
    std::map<uint32_t, int> counts;
    for (uint64_t t = 0; t < 400; ++t) {
        PrngSource src(18, t);
        std::vector<int> x = runner.run(src).outcome;
        int parity = 1;
        for (int v : x) parity *= v;
        CHECK(parity == +1);
        ++counts[outcome_index(x)];
    }
    CHECK(counts.size() == 4);  // all four even-parity outcomes show up
}

TEST_CASE("runs are deterministic given the seed split") {
    MeasurementSet m = MeasurementSet::random(3, 501);
    ProtocolRunner runner(m);
    for (uint64_t t = 0; t < 20; ++t) {
        PrngSource a(99, t), b(99, t);
        RunResult ra = runner.run(a), rb = runner.run(b);
        CHECK(ra.outcome == rb.outcome);
        CHECK(ra.transcript.export_records() == rb.transcript.export_records());
        CHECK(ra.transcript.random_bits == rb.transcript.random_bits);
        CHECK(a.bits_consumed() == b.bits_consumed());
    }
}

TEST_CASE("transcript counters equal the message log totals") {
    MeasurementSet m = MeasurementSet::random(4, 502);
    ProtocolRunner runner(m);
    for (uint64_t t = 0; t < 50; ++t) {
        PrngSource src(100, t);
        uint64_t before = src.bits_consumed();
        RunResult r = runner.run(src);
        uint64_t to_leader = 0, from_leader = 0;
        for (const Message& msg : r.transcript.messages) {
            CHECK(msg.bits > 0);
            (msg.receiver < msg.sender ? to_leader : from_leader) += msg.bits;
        }
        CHECK(r.transcript.bits_to_leader == to_leader);
        CHECK(r.transcript.bits_from_leader == from_leader);
        CHECK(r.transcript.random_bits == src.bits_consumed() - before);
        CHECK(r.transcript.outer_rounds == r.transcript.inner_k_per_round.size());
        CHECK(r.transcript.inner_k_final == r.transcript.inner_k_per_round.back());
    }
}

TEST_CASE("per-run communication matches the closed forms") {
    const int n = 3;
    const unsigned log_n = ceil_log2(n);
    MeasurementSet m = MeasurementSet::random(n, 503);
    ProtocolRunner runner(m);
    for (uint64_t t = 0; t < 200; ++t) {
        PrngSource src(101, t);
        RunResult r = runner.run(src);
        const Transcript& tr = r.transcript;
        uint64_t cs_expect = 0;
        for (unsigned k : tr.inner_k_per_round) {
            cs_expect += 2ull * (n - 1) * (k + 4 + log_n);
        }
        CHECK(tr.phase_bits(Phase::CsStream) == cs_expect);
        uint64_t bern_expect =
            static_cast<uint64_t>(n - 1) * (3 + tr.bernoulli_k_final + log_n + 1);
        CHECK(tr.phase_bits(Phase::Bernoulli) == bern_expect);
        CHECK(tr.phase_bits(Phase::SignBroadcast) ==
              static_cast<uint64_t>(n - 1) * tr.outer_rounds);
    }
}

TEST_CASE("accepted single rounds are distributed by the target branch") {
    MeasurementSet m = MeasurementSet::random(2, 504);
    ProtocolRunner runner(m);
    const int trials = 20000;
    std::map<uint32_t, int> counts;
    int accepted = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        PrngSource src(505, t);
        Transcript tr;
        auto round = runner.single_round(+1, src, tr);
        if (!round.accepted) continue;
        ++accepted;
        ++counts[outcome_index(round.outcome)];
    }
    CHECK(accepted > trials / 3);
    for (uint32_t idx = 0; idx < 4; ++idx) {
        std::vector<int> x = outcome_from_index(2, idx);
        double expect = sub_distributions(m, x).p1.to_double();
        double got = static_cast<double>(counts[idx]) / accepted;
        CHECK(std::fabs(got - expect) < 0.02);
    }
}

TEST_CASE("bernoulli phase tracks the mixture weight") {
    MeasurementSet m = MeasurementSet::random(3, 506);
    ProtocolRunner runner(m);
    const int trials = 20000;
    int p2_branch = 0;
    for (uint64_t t = 0; t < trials; ++t) {
        PrngSource src(507, t);
        Transcript tr;
        p2_branch += runner.bernoulli_phase(src, tr);
    }
    Dyadic half = Dyadic::from_parts(m.theta_sum().sign(), m.theta_sum().magnitude(),
                                     m.theta_sum().scale() + 1);
    double weight = 1.0 - approx_cos2_sum({half}, 50).to_double();
    CHECK(std::fabs(static_cast<double>(p2_branch) / trials - weight) < 0.02);
}

TEST_CASE("all variants sample the same distribution") {
    MeasurementSet m = MeasurementSet::random(2, 508);
    OutcomeDistribution expected = full_distribution(m);
    for (Variant v : {Variant::Sequential, Variant::Doubling, Variant::ConstantRound,
                      Variant::ParallelTree}) {
        ProtocolRunner runner(m, {v});
        std::vector<uint64_t> counts(4, 0);
        const uint64_t trials = 4000;
        for (uint64_t t = 0; t < trials; ++t) {
            PrngSource src(509 + static_cast<int>(v), t);
            ++counts[outcome_index(runner.run(src).outcome)];
        }
        GofResult gof = gof_test(counts, expected);
        CHECK(!gof.zero_cell_violation);
        CHECK(gof.pass);
    }
}

TEST_CASE("equatorial variant requires an equatorial measurement set") {
    MeasurementSet tilted = MeasurementSet::random(3, 510);
    CHECK_THROWS_AS(ProtocolRunner(tilted, {Variant::Equatorial}), ConfigError);

    MeasurementSet flat = MeasurementSet::random(3, 511);
    for (auto& party : flat.parties) party.phi = ExactAngle();
    ProtocolRunner runner(flat, {Variant::Equatorial});
    PrngSource src(512);
    RunResult r = runner.run(src);
    CHECK(r.outcome.size() == 3);
    CHECK(r.transcript.phase_bits(Phase::Output) == 2);  // n-1 announced bits
}

TEST_CASE("parallel variant uses tree-depth time") {
    MeasurementSet m = MeasurementSet::random(4, 513);
    ProtocolRunner seq(m), par(m, {Variant::ParallelTree});
    uint64_t seq_time = 0, par_time = 0;
    for (uint64_t t = 0; t < 50; ++t) {
        PrngSource a(514, t), b(514, t);
        seq_time += seq.run(a).transcript.parallel_time_steps;
        par_time += par.run(b).transcript.parallel_time_steps;
    }
    CHECK(par_time > 0);
    CHECK(seq_time > 0);
}

TEST_CASE("an unreachable depth cap raises DepthExceeded") {
    MeasurementSet m =
        MeasurementSet::from_strings({"0.3", "0.4"}, {"0.1", "0.2"}, AngleUnit::Radians);
    ProtocolRunner runner(m, {Variant::Sequential, 1});
    PrngSource src(515);
    CHECK_THROWS_AS(runner.run(src), DepthExceeded);
}
