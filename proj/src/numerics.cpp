#include "ghzsim/numerics.hpp"

#include <mpfr.h>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

// Directed enclosure of x * sin(phi) for an exact dyadic phi and x = +-1.
void signed_sin(const Dyadic& phi, int x, mpfr_ptr lo, mpfr_ptr hi) {
    MpFloat ph(MPFR_PREC_MIN);
    phi.set_mpfr(ph.get());
    mpfr_sin(lo, ph.get(), MPFR_RNDD);
    mpfr_sin(hi, ph.get(), MPFR_RNDU);
    if (x < 0) {
        mpfr_neg(lo, lo, MPFR_RNDN);
        mpfr_neg(hi, hi, MPFR_RNDN);
        mpfr_swap(lo, hi);
    }
}

// In place: [lo, hi] -> [(1 + sign*lo)/2, (1 + sign*hi)/2] with outward
// rounding, clamped into [0, 1] (the true value is a squared cosine).
void half_shift(mpfr_ptr lo, mpfr_ptr hi, int sign) {
    if (sign < 0) {
        mpfr_neg(lo, lo, MPFR_RNDN);
        mpfr_neg(hi, hi, MPFR_RNDN);
        mpfr_swap(lo, hi);
    }
    mpfr_add_ui(lo, lo, 1, MPFR_RNDD);
    mpfr_div_2ui(lo, lo, 1, MPFR_RNDD);
    mpfr_add_ui(hi, hi, 1, MPFR_RNDU);
    mpfr_div_2ui(hi, hi, 1, MPFR_RNDU);
    if (mpfr_sgn(lo) < 0) mpfr_set_zero(lo, +1);
    if (mpfr_sgn(hi) < 0) mpfr_set_zero(hi, +1);
    if (mpfr_cmp_ui(lo, 1) > 0) mpfr_set_ui(lo, 1, MPFR_RNDN);
    if (mpfr_cmp_ui(hi, 1) > 0) mpfr_set_ui(hi, 1, MPFR_RNDN);
}

}  // namespace

unsigned ceil_log2(unsigned n) {
    unsigned m = 0;
    while ((1u << m) < n) ++m;
    return m;
}

CachedReal make_c(const Dyadic& phi, int x) {
    return CachedReal([phi, x](mpfr_prec_t prec) {
        Enclosure e(prec);
        signed_sin(phi, x, e.lo.get(), e.hi.get());
        half_shift(e.lo.get(), e.hi.get(), +1);
        mpfr_sqrt(e.lo.get(), e.lo.get(), MPFR_RNDD);
        mpfr_sqrt(e.hi.get(), e.hi.get(), MPFR_RNDU);
        return e;
    });
}

CachedReal make_s(const Dyadic& phi, int x) {
    return CachedReal([phi, x](mpfr_prec_t prec) {
        Enclosure e(prec);
        signed_sin(phi, x, e.lo.get(), e.hi.get());
        half_shift(e.lo.get(), e.hi.get(), -1);
        mpfr_sqrt(e.lo.get(), e.lo.get(), MPFR_RNDD);
        mpfr_sqrt(e.hi.get(), e.hi.get(), MPFR_RNDU);
        if (x < 0) {
            mpfr_neg(e.lo.get(), e.lo.get(), MPFR_RNDN);
            mpfr_neg(e.hi.get(), e.hi.get(), MPFR_RNDN);
            mpfr_swap(e.lo.get(), e.hi.get());
        }
        return e;
    });
}

CachedReal make_alpha_sq(const Dyadic& phi) {
    return CachedReal([phi](mpfr_prec_t prec) {
        Enclosure e(prec);
        signed_sin(phi, +1, e.lo.get(), e.hi.get());
        half_shift(e.lo.get(), e.hi.get(), +1);
        return e;
    });
}

std::pair<Dyadic, Dyadic> eval_cs_truncation(const ExactAngle& phi, int x, unsigned l) {
    CachedReal c = make_c(phi.radians(), x);
    CachedReal s = make_s(phi.radians(), x);
    return {c.truncate(l), s.truncate(l)};
}

Dyadic approx_cos2_sum(const std::vector<Dyadic>& half_angle_truncations, unsigned k) {
    Dyadic sum;
    for (const auto& t : half_angle_truncations) sum = sum + t;
    // cos^2(v) = (1 + cos(2v))/2, exact at v = 0 so boundary sets resolve.
    CachedReal cos2([sum](mpfr_prec_t prec) {
        Enclosure e(prec);
        MpFloat v(MPFR_PREC_MIN);
        sum.set_mpfr(v.get());
        mpfr_mul_2ui(v.get(), v.get(), 1, MPFR_RNDN);
        mpfr_cos(e.lo.get(), v.get(), MPFR_RNDD);
        mpfr_cos(e.hi.get(), v.get(), MPFR_RNDU);
        half_shift(e.lo.get(), e.hi.get(), +1);
        return e;
    });
    return cos2.truncate(k + 1);
}

Dyadic tree_reduce_truncated(std::vector<Dyadic> leaves, unsigned l, const TreeTransmit& transmit) {
    if (leaves.empty()) return Dyadic(1);
    const size_t real_count = leaves.size();
    size_t size = 1;
    while (size < leaves.size()) size <<= 1;
    leaves.resize(size, Dyadic(1));
    unsigned level = 0;
    for (size_t step = 1; step < size; step <<= 1, ++level) {
        for (size_t i = 0; i + step < size; i += 2 * step) {
            // Subtrees holding only virtual identity leaves send nothing.
            if (transmit && i + step < real_count) {
                transmit(level, static_cast<unsigned>(i + step), static_cast<unsigned>(i));
            }
            leaves[i] = mul_truncate(leaves[i], leaves[i + step], l);
        }
    }
    return leaves[0];
}

Dyadic tree_reduce_product(const std::vector<const CachedReal*>& leaves, unsigned k) {
    const unsigned l = k + ceil_log2(static_cast<unsigned>(leaves.size())) + 1;
    std::vector<Dyadic> vals;
    vals.reserve(leaves.size());
    for (const CachedReal* leaf : leaves) vals.push_back(leaf->truncate(l));
    return tree_reduce_truncated(std::move(vals), l);
}

}  // namespace ghzsim
