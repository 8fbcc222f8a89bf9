#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <span>
#include <string>

namespace ghzsim {

/// Signed fixed-point number sign * mantissa / 2^scale, stored in
/// sign-magnitude form. Truncation is floor of the magnitude (toward zero),
/// so refining the scale by one appends exactly one magnitude bit.
class Dyadic {
  public:
    Dyadic() : sign_(+1), mag_(0), scale_(0) {}
    Dyadic(long value) : sign_(value < 0 ? -1 : +1), mag_(value < 0 ? -value : value), scale_(0) {}

    static Dyadic from_parts(int sign, mpz_class magnitude, unsigned scale);
    /// numerator / 2^scale with a signed numerator.
    static Dyadic from_signed(const mpz_class& numerator, unsigned scale);

    int sign() const { return sign_; }
    const mpz_class& magnitude() const { return mag_; }
    unsigned scale() const { return scale_; }
    bool is_zero() const { return mag_ == 0; }

    mpz_class signed_mantissa() const { return sign_ < 0 ? mpz_class(-mag_) : mag_; }

    /// Truncation toward zero at scale l (for l < scale drops bits, for
    /// l >= scale is exact).
    Dyadic truncated(unsigned l) const;

    /// Same value re-expressed at scale l >= scale().
    Dyadic rescaled(unsigned l) const;

    /// i-th fractional bit (1-indexed) of the binary expansion of |value|.
    /// Meaningful for |value| <= 1.
    int magnitude_bit(unsigned i) const;

    Dyadic operator-() const;
    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);  // exact, scale adds

    /// Three-way comparison of the represented rational values.
    int cmp(const Dyadic& other) const;
    bool operator==(const Dyadic& other) const { return cmp(other) == 0; }
    bool operator<(const Dyadic& other) const { return cmp(other) < 0; }
    bool operator<=(const Dyadic& other) const { return cmp(other) <= 0; }
    bool operator>(const Dyadic& other) const { return cmp(other) > 0; }
    bool operator>=(const Dyadic& other) const { return cmp(other) >= 0; }

    int cmp_abs(const Dyadic& other) const;

    double to_double() const;
    mpq_class to_rational() const;
    /// Sets rop to the exact value (adjusts rop's precision as needed).
    void set_mpfr(mpfr_t rop) const;
    std::string to_string() const;  // decimal, for diagnostics

  private:
    int sign_;
    mpz_class mag_;
    unsigned scale_;
};

/// Exact integer product of two dyadics followed by magnitude-floor
/// truncation to scale l. Requires both inputs at scale <= l.
Dyadic mul_truncate(const Dyadic& a, const Dyadic& b, unsigned l);

}  // namespace ghzsim
