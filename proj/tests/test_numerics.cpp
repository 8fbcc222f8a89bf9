#include <doctest.h>
#include <mpfr.h>

#include <vector>

#include "ghzsim/angle.hpp"
#include "ghzsim/bits.hpp"
#include "ghzsim/numerics.hpp"

using namespace ghzsim;

TEST_CASE("ceil_log2") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(8) == 3);
    CHECK(ceil_log2(9) == 4);
}

TEST_CASE("cs pair at phi = 0 is the exact square root of one half") {
    ExactAngle phi;  // 0
    auto [c, s] = eval_cs_truncation(phi, +1, 8);
    CHECK(c == Dyadic::from_parts(+1, 181, 8));  // floor(sqrt(1/2) * 256)
    CHECK(s == Dyadic::from_parts(+1, 181, 8));
    auto [cm, sm] = eval_cs_truncation(phi, -1, 8);
    CHECK(cm == Dyadic::from_parts(+1, 181, 8));
    CHECK(sm == Dyadic::from_parts(-1, 181, 8));
}

TEST_CASE("cs pair near phi = pi/2 lands on the dyadic boundary values") {
    // "0.5" in pi units is the 128-bit dyadic truncation of pi/2, a hair
    // below the exact boundary; truncations reflect the dyadic value.
    ExactAngle phi = ExactAngle::parse("0.5", AngleUnit::Pi);
    auto [c, s] = eval_cs_truncation(phi, +1, 8);
    CHECK(c == Dyadic::from_parts(+1, 255, 8));
    CHECK(s == Dyadic(0));
    auto [cm, sm] = eval_cs_truncation(phi, -1, 8);
    CHECK(cm == Dyadic(0));
    CHECK(sm == Dyadic::from_parts(-1, 255, 8));
}

TEST_CASE("truncated cs pairs nearly satisfy the pythagorean identity") {
    for (int set = 0; set < 20; ++set) {
        MeasurementSet m = MeasurementSet::random(1, 7000 + set);
        for (int x : {+1, -1}) {
            for (unsigned l : {4u, 10u, 24u}) {
                auto [c, s] = eval_cs_truncation(m.parties[0].phi, x, l);
                mpq_class sum = c.to_rational() * c.to_rational() + s.to_rational() * s.to_rational();
                mpq_class slack = mpq_class(4) / (mpz_class(1) << l);
                CHECK(sum <= 1);
                CHECK(sum >= 1 - slack);
                CHECK((s.is_zero() || s.sign() == x));
            }
        }
    }
}

TEST_CASE("approx_cos2_sum is exact on the zero angle") {
    std::vector<Dyadic> zeros(3, Dyadic(0));
    CHECK(approx_cos2_sum(zeros, 10) == Dyadic(1));
}

TEST_CASE("approx_cos2_sum is within 2^-k of the true cosine square") {
    PrngSource src(77);
    for (int rep = 0; rep < 40; ++rep) {
        unsigned k = 2 + static_cast<unsigned>(rep % 20);
        std::vector<Dyadic> parts;
        mpq_class total = 0;
        for (int j = 0; j < 4; ++j) {
            mpz_class mag = 0;
            for (int b = 0; b < 20; ++b) mag = mag * 2 + src.next_bit();
            Dyadic h = Dyadic::from_parts(src.next_bit() ? -1 : +1, mag, 19);
            parts.push_back(h);
            total += h.to_rational();
        }
        Dyadic got = approx_cos2_sum(parts, k);

        mpfr_t t, v;
        mpfr_init2(t, 256);
        mpfr_init2(v, 256);
        mpfr_set_q(t, total.get_mpq_t(), MPFR_RNDN);
        mpfr_cos(v, t, MPFR_RNDN);
        mpfr_sqr(v, v, MPFR_RNDN);
        mpfr_sub_q(v, v, got.to_rational().get_mpq_t(), MPFR_RNDN);
        mpfr_abs(v, v, MPFR_RNDN);
        double err = mpfr_get_d(v, MPFR_RNDN);
        mpfr_clears(t, v, nullptr);
        CHECK(err <= 1.0 / static_cast<double>(1ull << k));
    }
}

TEST_CASE("tree reduction of all-one leaves is one") {
    for (int n : {1, 2, 3, 5, 8}) {
        std::vector<Dyadic> leaves(n, Dyadic(1));
        CHECK(tree_reduce_truncated(leaves, 12) == Dyadic(1));
    }
}

TEST_CASE("tree reduction tracks the exact product") {
    PrngSource src(78);
    for (int rep = 0; rep < 60; ++rep) {
        int n = 1 + static_cast<int>(rep % 7);
        unsigned l = 6 + static_cast<unsigned>(rep % 24);
        std::vector<Dyadic> leaves;
        mpq_class exact = 1;
        for (int j = 0; j < n; ++j) {
            mpz_class mag = 0;
            for (unsigned b = 0; b < l; ++b) mag = mag * 2 + src.next_bit();
            Dyadic v = Dyadic::from_parts(src.next_bit() ? -1 : +1, mag, l);
            leaves.push_back(v);
            exact *= v.to_rational();
        }
        mpq_class err = abs(tree_reduce_truncated(leaves, l).to_rational() - exact);
        CHECK(err <= mpq_class(n) / (mpz_class(1) << l));
    }
}

TEST_CASE("tree reduction sends one message per non-padding merge") {
    for (int n : {2, 3, 5, 6, 8}) {
        std::vector<Dyadic> leaves(n, Dyadic::from_parts(+1, 3, 2));
        int messages = 0;
        tree_reduce_truncated(leaves, 10, [&](unsigned, unsigned, unsigned) { ++messages; });
        CHECK(messages == n - 1);
    }
}
