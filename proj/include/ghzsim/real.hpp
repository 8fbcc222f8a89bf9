#pragma once

#include <mpfr.h>

#include <functional>
#include <memory>
#include <optional>

#include "ghzsim/dyadic.hpp"

namespace ghzsim {

/// RAII wrapper for a single mpfr_t. Move-only.
class MpFloat {
  public:
    explicit MpFloat(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    MpFloat(const MpFloat&) = delete;
    MpFloat& operator=(const MpFloat&) = delete;
    MpFloat(MpFloat&& other) noexcept {
        mpfr_init2(x_, MPFR_PREC_MIN);
        mpfr_swap(x_, other.x_);
    }
    MpFloat& operator=(MpFloat&& other) noexcept {
        if (this != &other) mpfr_swap(x_, other.x_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

  private:
    mpfr_t x_;
};

/// Rigorous two-sided enclosure [lo, hi] of a real value, both endpoints at
/// the same working precision. lo == hi marks an exactly known value.
struct Enclosure {
    MpFloat lo;
    MpFloat hi;
    mpfr_prec_t prec;

    explicit Enclosure(mpfr_prec_t p) : lo(p), hi(p), prec(p) {}
    bool exact() const { return mpfr_equal_p(lo.get(), hi.get()) != 0; }
};

/// Handle to an exact real defined by an enclosure evaluator. Truncations
/// are extracted from a cached enclosure, re-evaluating with doubled guard
/// bits until the floor decision is certain. Successive truncations with
/// increasing scale are prefix-consistent by construction (they are true
/// truncations of one real value).
class CachedReal {
  public:
    /// Evaluator must return an enclosure of the value at the requested
    /// working precision whose width shrinks as the precision grows.
    using Evaluator = std::function<Enclosure(mpfr_prec_t)>;

    explicit CachedReal(Evaluator ev) : ev_(std::move(ev)) {}

    /// sign(x) * floor(|x| * 2^l) / 2^l.
    /// Throws PrecisionExhausted past the guard cap.
    Dyadic truncate(unsigned l) const;

    /// i-th fractional bit (1-indexed) of the binary expansion of |x|,
    /// assuming |x| <= 1.
    int expansion_bit(unsigned i) const { return truncate(i).magnitude_bit(i); }

    /// Guard-bit cap before PrecisionExhausted is raised.
    static mpfr_prec_t guard_cap(unsigned l) { return 8 * static_cast<mpfr_prec_t>(l) + 256; }

  private:
    void refresh(mpfr_prec_t prec) const;

    Evaluator ev_;
    mutable std::optional<Enclosure> cache_;
};

}  // namespace ghzsim
