#include "ghzsim/angle.hpp"

#include <mutex>

#include "ghzsim/bits.hpp"
#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

constexpr mpfr_prec_t kParsePrec = 640;
constexpr mpfr_prec_t kPiCachePrec = 2048;

// Truncate an mpfr value toward zero at kAngleFractionBits fractional bits.
Dyadic dyadic_from_mpfr(mpfr_srcptr v) {
    MpFloat t(mpfr_get_prec(v));
    mpfr_mul_2ui(t.get(), v, kAngleFractionBits, MPFR_RNDN);  // exact
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDZ);
    return Dyadic::from_signed(z, kAngleFractionBits);
}

}  // namespace

void cached_pi(mpfr_ptr rop, mpfr_rnd_t rnd) {
    static std::mutex mu;
    static MpFloat pi = [] {
        MpFloat p(kPiCachePrec);
        mpfr_const_pi(p.get(), MPFR_RNDN);
        return p;
    }();
    std::lock_guard<std::mutex> lock(mu);
    mpfr_set(rop, pi.get(), rnd);
}

ExactAngle ExactAngle::parse(const std::string& decimal, AngleUnit unit) {
    MpFloat v(kParsePrec);
    if (mpfr_set_str(v.get(), decimal.c_str(), 10, MPFR_RNDN) != 0 && decimal.empty()) {
        throw ConfigError("bad angle literal: '" + decimal + "'");
    }
    if (mpfr_nan_p(v.get()) || mpfr_inf_p(v.get())) {
        throw ConfigError("bad angle literal: '" + decimal + "'");
    }
    if (unit == AngleUnit::Pi) {
        MpFloat pi(kParsePrec);
        cached_pi(pi.get(), MPFR_RNDN);
        mpfr_mul(v.get(), v.get(), pi.get(), MPFR_RNDN);
    }
    return ExactAngle(dyadic_from_mpfr(v.get()));
}

bool MeasurementSet::equatorial() const {
    for (const auto& a : parties) {
        if (!a.phi.is_zero()) return false;
    }
    return true;
}

Dyadic MeasurementSet::theta_sum() const {
    Dyadic sum;
    for (const auto& a : parties) sum = sum + a.theta.radians();
    return sum;
}

MeasurementSet MeasurementSet::from_strings(const std::vector<std::string>& thetas,
                                            const std::vector<std::string>& phis,
                                            AngleUnit unit) {
    if (thetas.size() != phis.size() || thetas.empty()) {
        throw ConfigError("need matching non-empty theta and phi lists");
    }
    MeasurementSet m;
    for (size_t i = 0; i < thetas.size(); ++i) {
        m.parties.push_back({ExactAngle::parse(thetas[i], unit), ExactAngle::parse(phis[i], unit)});
    }
    m.validate();
    return m;
}

MeasurementSet MeasurementSet::random(int n, uint64_t seed) {
    PrngSource src(seed, /*stream=*/0x616e676c65);
    auto uniform_fraction = [&src]() {
        mpz_class m = 0;
        for (unsigned i = 0; i < kAngleFractionBits; ++i) {
            m <<= 1;
            m += src.next_bit();
        }
        return Dyadic::from_signed(m, kAngleFractionBits);  // in [0, 1)
    };
    MeasurementSet ms;
    MpFloat pi(kParsePrec), t(kParsePrec);
    cached_pi(pi.get(), MPFR_RNDN);
    for (int j = 0; j < n; ++j) {
        // theta = trunc(u * 2*pi) stays inside [0, 2*pi) since u < 1.
        Dyadic u = uniform_fraction();
        u.set_mpfr(t.get());
        mpfr_prec_round(t.get(), kParsePrec, MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), pi.get(), MPFR_RNDZ);
        mpfr_mul_2ui(t.get(), t.get(), 1, MPFR_RNDZ);
        Dyadic theta = dyadic_from_mpfr(t.get());
        // phi = trunc((v - 1/2) * pi), |phi| < pi/2.
        Dyadic v = uniform_fraction() - Dyadic::from_signed(1, 1);
        v.set_mpfr(t.get());
        mpfr_prec_round(t.get(), kParsePrec, MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), pi.get(), MPFR_RNDZ);
        Dyadic phi = dyadic_from_mpfr(t.get());
        ms.parties.push_back({ExactAngle::from_dyadic(theta), ExactAngle::from_dyadic(phi)});
    }
    ms.validate();
    return ms;
}

void MeasurementSet::validate() const {
    if (parties.empty()) throw ConfigError("measurement set needs n >= 1");
    MpFloat pi(256), bound(256);
    cached_pi(pi.get(), MPFR_RNDD);
    for (const auto& a : parties) {
        // theta in [0, 2*pi): compare against a slightly-low 2*pi; dyadic
        // angles cannot hit the irrational boundary.
        if (a.theta.radians().sign() < 0 && !a.theta.radians().is_zero()) {
            throw ConfigError("theta out of range [0, 2*pi)");
        }
        mpfr_mul_2ui(bound.get(), pi.get(), 1, MPFR_RNDD);
        MpFloat th(8);
        a.theta.radians().set_mpfr(th.get());
        if (mpfr_cmp(th.get(), bound.get()) > 0) throw ConfigError("theta out of range [0, 2*pi)");
        mpfr_div_2ui(bound.get(), pi.get(), 1, MPFR_RNDU);
        MpFloat ph(8);
        a.phi.radians().set_mpfr(ph.get());
        mpfr_abs(ph.get(), ph.get(), MPFR_RNDN);
        if (mpfr_cmp(ph.get(), bound.get()) > 0) throw ConfigError("phi out of range [-pi/2, pi/2]");
    }
}

}  // namespace ghzsim
