#include "ghzsim/dyadic.hpp"

#include <cassert>
#include <stdexcept>

namespace ghzsim {

Dyadic Dyadic::from_parts(int sign, mpz_class magnitude, unsigned scale) {
    assert(sign == 1 || sign == -1);
    assert(magnitude >= 0);
    Dyadic d;
    d.sign_ = magnitude == 0 ? +1 : sign;
    d.mag_ = std::move(magnitude);
    d.scale_ = scale;
    return d;
}

Dyadic Dyadic::from_signed(const mpz_class& numerator, unsigned scale) {
    if (numerator < 0) return from_parts(-1, mpz_class(-numerator), scale);
    return from_parts(+1, numerator, scale);
}

Dyadic Dyadic::truncated(unsigned l) const {
    if (l >= scale_) return rescaled(l);
    mpz_class m;
    mpz_tdiv_q_2exp(m.get_mpz_t(), mag_.get_mpz_t(), scale_ - l);
    return from_parts(sign_, std::move(m), l);
}

Dyadic Dyadic::rescaled(unsigned l) const {
    assert(l >= scale_);
    mpz_class m;
    mpz_mul_2exp(m.get_mpz_t(), mag_.get_mpz_t(), l - scale_);
    return from_parts(sign_, std::move(m), l);
}

int Dyadic::magnitude_bit(unsigned i) const {
    if (i > scale_) {
        // Expanding beyond the stored scale appends zero bits.
        return 0;
    }
    return mpz_tstbit(mag_.get_mpz_t(), scale_ - i);
}

Dyadic Dyadic::operator-() const {
    return from_parts(-sign_, mag_, scale_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned s = std::max(a.scale_, b.scale_);
    mpz_class n = a.rescaled(s).signed_mantissa() + b.rescaled(s).signed_mantissa();
    return Dyadic::from_signed(n, s);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    return a + (-b);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic::from_parts(a.sign_ * b.sign_, mpz_class(a.mag_ * b.mag_), a.scale_ + b.scale_);
}

int Dyadic::cmp(const Dyadic& other) const {
    unsigned s = std::max(scale_, other.scale_);
    mpz_class lhs = rescaled(s).signed_mantissa();
    mpz_class rhs = other.rescaled(s).signed_mantissa();
    return ::cmp(lhs, rhs);
}

int Dyadic::cmp_abs(const Dyadic& other) const {
    unsigned s = std::max(scale_, other.scale_);
    return ::cmp(rescaled(s).magnitude(), other.rescaled(s).magnitude());
}

double Dyadic::to_double() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    set_mpfr(t);
    double v = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return v;
}

mpq_class Dyadic::to_rational() const {
    mpq_class q(signed_mantissa());
    mpq_class den(1);
    mpz_mul_2exp(den.get_num().get_mpz_t(), den.get_num().get_mpz_t(), scale_);
    q /= den;
    q.canonicalize();
    return q;
}

void Dyadic::set_mpfr(mpfr_t rop) const {
    size_t bits = mpz_sizeinbase(mag_.get_mpz_t(), 2);
    mpfr_set_prec(rop, static_cast<mpfr_prec_t>(std::max<size_t>(bits + 2, 8)));
    mpfr_set_z(rop, signed_mantissa().get_mpz_t(), MPFR_RNDN);  // exact
    mpfr_div_2ui(rop, rop, scale_, MPFR_RNDN);                  // exact
}

std::string Dyadic::to_string() const {
    mpq_class q = to_rational();
    return q.get_str();
}

Dyadic mul_truncate(const Dyadic& a, const Dyadic& b, unsigned l) {
    assert(a.scale() <= l && b.scale() <= l);
    Dyadic exact = a * b;
    return exact.truncated(l);
}

}  // namespace ghzsim
