#include "ghzsim/real.hpp"

#include <algorithm>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

// Integer part toward zero of v * 2^l, i.e. the signed magnitude-floor map
// the truncation is defined by. Monotone nondecreasing in v.
mpz_class floor_magnitude(mpfr_srcptr v, unsigned l) {
    MpFloat t(mpfr_get_prec(v));
    mpfr_mul_2ui(t.get(), v, l, MPFR_RNDN);  // exact (exponent shift)
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDZ);
    return z;
}

}  // namespace

void CachedReal::refresh(mpfr_prec_t prec) const {
    cache_.emplace(ev_(prec));
}

Dyadic CachedReal::truncate(unsigned l) const {
    const mpfr_prec_t cap = static_cast<mpfr_prec_t>(l) + guard_cap(l);
    mpfr_prec_t want = static_cast<mpfr_prec_t>(l) + 64;
    if (cache_ && cache_->prec > want) want = cache_->prec;
    if (!cache_ || cache_->prec < want) refresh(want);

    for (;;) {
        mpz_class glo = floor_magnitude(cache_->lo.get(), l);
        mpz_class ghi = floor_magnitude(cache_->hi.get(), l);
        if (glo == ghi) return Dyadic::from_signed(glo, l);
        if (cache_->prec >= cap) {
            throw PrecisionExhausted("truncation boundary unresolved at scale " +
                                     std::to_string(l) + " with " +
                                     std::to_string(cache_->prec) + " working bits");
        }
        refresh(std::min<mpfr_prec_t>(cache_->prec * 2, cap));
    }
}

}  // namespace ghzsim
