#include "ghzsim/oracle.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

#include "ghzsim/errors.hpp"
#include "ghzsim/real.hpp"

namespace ghzsim {

namespace {

constexpr mpfr_prec_t kPrec = 192;

Dyadic round_to_scale(mpfr_srcptr v, unsigned scale) {
    MpFloat t(mpfr_get_prec(v));
    mpfr_mul_2ui(t.get(), v, scale, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
    return Dyadic::from_signed(z, scale);
}

// cos and sin of h_j = (phi_j - (pi/2) x_j)/2 for both outcome signs.
struct PartyTrig {
    MpFloat c_pos{kPrec}, s_pos{kPrec};
    MpFloat c_neg{kPrec}, s_neg{kPrec};

    const MpFloat& c(int x) const { return x > 0 ? c_pos : c_neg; }
    const MpFloat& s(int x) const { return x > 0 ? s_pos : s_neg; }
};

struct TrigTable {
    std::vector<PartyTrig> parties;
    MpFloat cos_half{kPrec}, sin_half{kPrec};  // of theta/2, theta = sum theta_j
    MpFloat cos_sum{kPrec};                    // of theta

    explicit TrigTable(const MeasurementSet& m) {
        MpFloat pi(kPrec), h(kPrec), ph(MPFR_PREC_MIN);
        cached_pi(pi.get(), MPFR_RNDN);
        parties.reserve(m.parties.size());
        for (const auto& a : m.parties) {
            PartyTrig t;
            a.phi.radians().set_mpfr(ph.get());
            for (int x : {+1, -1}) {
                mpfr_div_2ui(h.get(), pi.get(), 1, MPFR_RNDN);
                if (x > 0) mpfr_neg(h.get(), h.get(), MPFR_RNDN);
                mpfr_add(h.get(), h.get(), ph.get(), MPFR_RNDN);
                mpfr_div_2ui(h.get(), h.get(), 1, MPFR_RNDN);
                mpfr_sin_cos(x > 0 ? t.s_pos.get() : t.s_neg.get(),
                             x > 0 ? t.c_pos.get() : t.c_neg.get(), h.get(), MPFR_RNDN);
            }
            parties.push_back(std::move(t));
        }
        Dyadic theta = m.theta_sum();
        theta.set_mpfr(ph.get());
        mpfr_div_2ui(h.get(), ph.get(), 1, MPFR_RNDN);
        mpfr_sin_cos(sin_half.get(), cos_half.get(), h.get(), MPFR_RNDN);
        mpfr_set(h.get(), ph.get(), MPFR_RNDN);
        mpfr_cos(cos_sum.get(), h.get(), MPFR_RNDN);
    }

    void amplitudes(const std::vector<int>& x, mpfr_ptr a1, mpfr_ptr a2) const {
        mpfr_set_ui(a1, 1, MPFR_RNDN);
        mpfr_set_ui(a2, 1, MPFR_RNDN);
        for (size_t j = 0; j < parties.size(); ++j) {
            mpfr_mul(a1, a1, parties[j].c(x[j]).get(), MPFR_RNDN);
            mpfr_mul(a2, a2, parties[j].s(x[j]).get(), MPFR_RNDN);
            mpfr_neg(a2, a2, MPFR_RNDN);
        }
    }

    void decomposition_prob(const std::vector<int>& x, mpfr_ptr p) const {
        MpFloat a1(kPrec), a2(kPrec), t(kPrec);
        amplitudes(x, a1.get(), a2.get());
        mpfr_add(t.get(), a1.get(), a2.get(), MPFR_RNDN);
        mpfr_sqr(t.get(), t.get(), MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), cos_half.get(), MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), cos_half.get(), MPFR_RNDN);
        mpfr_sub(p, a1.get(), a2.get(), MPFR_RNDN);
        mpfr_sqr(p, p, MPFR_RNDN);
        mpfr_mul(p, p, sin_half.get(), MPFR_RNDN);
        mpfr_mul(p, p, sin_half.get(), MPFR_RNDN);
        mpfr_add(p, p, t.get(), MPFR_RNDN);
        mpfr_div_2ui(p, p, 1, MPFR_RNDN);
    }
};

void check_outcome(const MeasurementSet& m, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != m.n()) throw ConfigError("outcome length mismatch");
    for (int v : x) {
        if (v != 1 && v != -1) throw ConfigError("outcome entries must be +-1");
    }
}

}  // namespace

uint32_t outcome_index(const std::vector<int>& x) {
    uint32_t idx = 0;
    for (size_t j = 0; j < x.size(); ++j) {
        if (x[j] < 0) idx |= (1u << j);
    }
    return idx;
}

std::vector<int> outcome_from_index(int n, uint32_t index) {
    std::vector<int> x(n);
    for (int j = 0; j < n; ++j) x[j] = (index >> j) & 1u ? -1 : +1;
    return x;
}

std::pair<Dyadic, Dyadic> amplitudes(const MeasurementSet& m, const std::vector<int>& x) {
    check_outcome(m, x);
    TrigTable t(m);
    MpFloat a1(kPrec), a2(kPrec);
    t.amplitudes(x, a1.get(), a2.get());
    return {round_to_scale(a1.get(), kOracleScale), round_to_scale(a2.get(), kOracleScale)};
}

SubDistributions sub_distributions(const MeasurementSet& m, const std::vector<int>& x) {
    check_outcome(m, x);
    TrigTable t(m);
    MpFloat a1(kPrec), a2(kPrec), u(kPrec);
    t.amplitudes(x, a1.get(), a2.get());
    SubDistributions out;
    mpfr_add(u.get(), a1.get(), a2.get(), MPFR_RNDN);
    mpfr_sqr(u.get(), u.get(), MPFR_RNDN);
    mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);
    out.p1 = round_to_scale(u.get(), kOracleScale);
    mpfr_sub(u.get(), a1.get(), a2.get(), MPFR_RNDN);
    mpfr_sqr(u.get(), u.get(), MPFR_RNDN);
    mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);
    out.p2 = round_to_scale(u.get(), kOracleScale);
    mpfr_sqr(u.get(), a1.get(), MPFR_RNDN);
    out.q1 = round_to_scale(u.get(), kOracleScale);
    mpfr_sqr(u.get(), a2.get(), MPFR_RNDN);
    out.q2 = round_to_scale(u.get(), kOracleScale);
    return out;
}

Dyadic ghz_prob(const MeasurementSet& m, const std::vector<int>& x) {
    check_outcome(m, x);
    TrigTable t(m);
    MpFloat p(kPrec);
    t.decomposition_prob(x, p.get());
    return round_to_scale(p.get(), kOracleScale);
}

Dyadic trace_prob(const MeasurementSet& m, const std::vector<int>& x) {
    check_outcome(m, x);
    TrigTable t(m);
    MpFloat f1(kPrec), f4(kPrec), g(kPrec), p(kPrec);
    mpfr_set_ui(f1.get(), 1, MPFR_RNDN);
    mpfr_set_ui(f4.get(), 1, MPFR_RNDN);
    mpfr_set_ui(g.get(), 1, MPFR_RNDN);
    for (size_t j = 0; j < t.parties.size(); ++j) {
        const MpFloat& c = t.parties[j].c(x[j]);
        const MpFloat& s = t.parties[j].s(x[j]);
        mpfr_mul(f1.get(), f1.get(), c.get(), MPFR_RNDN);
        mpfr_mul(f1.get(), f1.get(), c.get(), MPFR_RNDN);
        mpfr_mul(f4.get(), f4.get(), s.get(), MPFR_RNDN);
        mpfr_mul(f4.get(), f4.get(), s.get(), MPFR_RNDN);
        mpfr_mul(g.get(), g.get(), s.get(), MPFR_RNDN);
        mpfr_mul(g.get(), g.get(), c.get(), MPFR_RNDN);
        mpfr_neg(g.get(), g.get(), MPFR_RNDN);
    }
    // f2 + f3 = 2 Re(f2) = 2 cos(sum theta_j) * g
    mpfr_mul(g.get(), g.get(), t.cos_sum.get(), MPFR_RNDN);
    mpfr_add(p.get(), f1.get(), f4.get(), MPFR_RNDN);
    mpfr_div_2ui(p.get(), p.get(), 1, MPFR_RNDN);
    mpfr_add(p.get(), p.get(), g.get(), MPFR_RNDN);
    return round_to_scale(p.get(), kOracleScale);
}

OutcomeDistribution full_distribution(const MeasurementSet& m) {
    if (m.n() > kMaxEnumParties) {
        throw TooLarge("outcome enumeration capped at " + std::to_string(kMaxEnumParties) +
                       " parties, got " + std::to_string(m.n()));
    }
    TrigTable t(m);
    OutcomeDistribution d;
    d.n = m.n();
    const uint32_t count = 1u << m.n();
    d.table.reserve(count);
    MpFloat p(kPrec);
    for (uint32_t idx = 0; idx < count; ++idx) {
        t.decomposition_prob(outcome_from_index(m.n(), idx), p.get());
        d.table.push_back(round_to_scale(p.get(), kOracleScale));
    }
    return d;
}

Dyadic equatorial_correlation(const MeasurementSet& m) {
    if (!m.equatorial()) throw NotEquatorial("correlation formula needs all phi_j = 0");
    MpFloat th(MPFR_PREC_MIN), c(kPrec);
    m.theta_sum().set_mpfr(th.get());
    mpfr_cos(c.get(), th.get(), MPFR_RNDN);
    return round_to_scale(c.get(), kOracleScale);
}

double entropy_bits(const OutcomeDistribution& d) {
    MpFloat p(MPFR_PREC_MIN), lg(kPrec), acc(kPrec);
    mpfr_set_zero(acc.get(), +1);
    for (const Dyadic& entry : d.table) {
        if (entry.sign() < 0 || entry.is_zero()) continue;
        entry.set_mpfr(p.get());
        mpfr_log2(lg.get(), p.get(), MPFR_RNDN);
        mpfr_mul(lg.get(), lg.get(), p.get(), MPFR_RNDN);
        mpfr_sub(acc.get(), acc.get(), lg.get(), MPFR_RNDN);
    }
    return mpfr_get_d(acc.get(), MPFR_RNDN);
}

}  // namespace ghzsim
