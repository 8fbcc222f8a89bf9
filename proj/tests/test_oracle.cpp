#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <vector>

#include "ghzsim/angle.hpp"
#include "ghzsim/errors.hpp"
#include "ghzsim/oracle.hpp"

using namespace ghzsim;

namespace {

mpq_class pow2_inv(unsigned k) { return mpq_class(1) / (mpz_class(1) << k); }

// Reference via naive 256-bit floating point: (1 + cos(theta) cos(phi)) / 2.
double single_party_reference(const MeasurementSet& m, int x) {
    mpfr_t t, p, v;
    mpfr_inits2(256, t, p, v, nullptr);
    m.parties[0].theta.radians().set_mpfr(t);
    m.parties[0].phi.radians().set_mpfr(p);
    mpfr_cos(t, t, MPFR_RNDN);
    mpfr_cos(p, p, MPFR_RNDN);
    mpfr_mul(v, t, p, MPFR_RNDN);
    mpfr_add_ui(v, v, 1, MPFR_RNDN);
    mpfr_div_ui(v, v, 2, MPFR_RNDN);
    if (x < 0) mpfr_ui_sub(v, 1, v, MPFR_RNDN);
    double out = mpfr_get_d(v, MPFR_RNDN);
    mpfr_clears(t, p, v, nullptr);
    return out;
}

}  // namespace

TEST_CASE("outcome indexing round trips") {
    for (int n : {1, 3, 5}) {
        for (uint32_t idx = 0; idx < (1u << n); ++idx) {
            std::vector<int> x = outcome_from_index(n, idx);
            CHECK(static_cast<int>(x.size()) == n);
            CHECK(outcome_index(x) == idx);
        }
    }
    CHECK(outcome_index({+1, -1, +1}) == 2);
}

TEST_CASE("single party probability matches the closed form") {
    for (int set = 0; set < 30; ++set) {
        MeasurementSet m = MeasurementSet::random(1, 2000 + set);
        for (int x : {+1, -1}) {
            double got = ghz_prob(m, {x}).to_double();
            CHECK(std::fabs(got - single_party_reference(m, x)) < 1e-18);
        }
    }
}

TEST_CASE("decomposition route and trace route agree") {
    for (int set = 0; set < 10; ++set) {
        MeasurementSet m = MeasurementSet::random(3, 2100 + set);
        for (uint32_t idx = 0; idx < 8; ++idx) {
            std::vector<int> x = outcome_from_index(3, idx);
            mpq_class diff = abs(ghz_prob(m, x).to_rational() - trace_prob(m, x).to_rational());
            CHECK(diff <= pow2_inv(60));
        }
    }
}

TEST_CASE("sub-distributions combine into the outcome probability") {
    MeasurementSet m = MeasurementSet::random(4, 31);
    mpq_class sum_p1 = 0, sum_p2 = 0, sum_q = 0;
    for (uint32_t idx = 0; idx < 16; ++idx) {
        std::vector<int> x = outcome_from_index(4, idx);
        SubDistributions sd = sub_distributions(m, x);
        auto [a1, a2] = amplitudes(m, x);
        CHECK(abs(sd.q1.to_rational() - a1.to_rational() * a1.to_rational()) <= pow2_inv(60));
        CHECK(abs(sd.q2.to_rational() - a2.to_rational() * a2.to_rational()) <= pow2_inv(60));
        CHECK(sd.p1.to_rational() <= sd.q1.to_rational() + sd.q2.to_rational() + pow2_inv(60));
        CHECK(sd.p2.to_rational() <= sd.q1.to_rational() + sd.q2.to_rational() + pow2_inv(60));
        sum_p1 += sd.p1.to_rational();
        sum_p2 += sd.p2.to_rational();
        sum_q += sd.q1.to_rational() + sd.q2.to_rational();
    }
    CHECK(abs(sum_p1 - 1) <= pow2_inv(50));
    CHECK(abs(sum_p2 - 1) <= pow2_inv(50));
    CHECK(abs(sum_q - 2) <= pow2_inv(50));
}

TEST_CASE("full distributions normalize") {
    for (int n : {1, 2, 3, 5}) {
        MeasurementSet m = MeasurementSet::random(n, 40 + n);
        OutcomeDistribution d = full_distribution(m);
        mpq_class total = 0;
        for (const Dyadic& p : d.table) {
            CHECK(p.sign() >= 0);
            total += p.to_rational();
        }
        CHECK(abs(total - 1) <= pow2_inv(40));
    }
}

TEST_CASE("full distribution refuses oversized outcome tables") {
    CHECK_THROWS_AS(full_distribution(MeasurementSet::random(17, 1)), TooLarge);
}

TEST_CASE("equatorial correlation equals the cosine of the angle sum") {
    MeasurementSet m = MeasurementSet::from_strings({"0", "0"}, {"0", "0"}, AngleUnit::Radians);
    CHECK(equatorial_correlation(m) == Dyadic(1));  // angle sum exactly zero

    MeasurementSet third =
        MeasurementSet::from_strings({"0.25", "0.0833333333333333333333333333333333"},
                                     {"0", "0"}, AngleUnit::Pi);
    CHECK(std::fabs(equatorial_correlation(third).to_double() - 0.5) < 1e-18);

    MeasurementSet quarter = MeasurementSet::from_strings({"0.5"}, {"0"}, AngleUnit::Pi);
    CHECK(std::fabs(equatorial_correlation(quarter).to_double()) < 1e-18);

    MeasurementSet tilted = MeasurementSet::from_strings({"0.5"}, {"0.1"}, AngleUnit::Radians);
    CHECK_THROWS_AS(equatorial_correlation(tilted), NotEquatorial);
}

TEST_CASE("equatorial correlation matches the distribution's parity average") {
    for (int set = 0; set < 5; ++set) {
        MeasurementSet m = MeasurementSet::random(3, 60 + set);
        for (auto& party : m.parties) party.phi = ExactAngle();
        OutcomeDistribution d = full_distribution(m);
        mpq_class avg = 0;
        for (uint32_t idx = 0; idx < 8; ++idx) {
            int parity = __builtin_popcount(idx) % 2 ? -1 : +1;
            avg += parity * d.table[idx].to_rational();
        }
        CHECK(abs(avg - equatorial_correlation(m).to_rational()) <= pow2_inv(40));
    }
}

TEST_CASE("entropy of known tables") {
    // All parties measure X on 3 parties: uniform over even-parity outcomes.
    MeasurementSet x_basis =
        MeasurementSet::from_strings({"0", "0", "0"}, {"0", "0", "0"}, AngleUnit::Radians);
    CHECK(std::fabs(entropy_bits(full_distribution(x_basis)) - 2.0) < 1e-12);

    MeasurementSet point = MeasurementSet::from_strings({"0"}, {"0"}, AngleUnit::Radians);
    CHECK(entropy_bits(full_distribution(point)) == 0.0);

    for (int n : {2, 4}) {
        double h = entropy_bits(full_distribution(MeasurementSet::random(n, 70 + n)));
        CHECK(h >= 0.0);
        CHECK(h <= n);
    }
}

TEST_CASE("angle validation rejects out-of-range inputs") {
    CHECK_THROWS_AS(MeasurementSet::from_strings({"0"}, {"2"}, AngleUnit::Radians).validate(),
                    ConfigError);
    CHECK_THROWS_AS(MeasurementSet::from_strings({"-0.5"}, {"0"}, AngleUnit::Radians).validate(),
                    ConfigError);
    CHECK_NOTHROW(MeasurementSet::from_strings({"1.5"}, {"0.5"}, AngleUnit::Pi).validate());
}
