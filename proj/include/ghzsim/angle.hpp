#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ghzsim/dyadic.hpp"
#include "ghzsim/real.hpp"

namespace ghzsim {

/// Fixed input precision of angles, in fractional bits.
inline constexpr unsigned kAngleFractionBits = 128;

enum class AngleUnit { Radians, Pi };

/// An angle as an exact dyadic rational in radians, fixed at parse time.
/// All exactness claims in the system are relative to this value.
class ExactAngle {
  public:
    ExactAngle() = default;
    static ExactAngle from_dyadic(Dyadic radians) { return ExactAngle(std::move(radians)); }

    /// Parses a decimal string, multiplying by pi first for pi units, and
    /// truncates toward zero at kAngleFractionBits fractional bits.
    static ExactAngle parse(const std::string& decimal, AngleUnit unit);

    const Dyadic& radians() const { return radians_; }
    /// theta/2, exactly representable with one more fractional bit.
    Dyadic half() const { return Dyadic::from_parts(radians_.sign(), radians_.magnitude(), radians_.scale() + 1); }

    bool is_zero() const { return radians_.is_zero(); }

  private:
    explicit ExactAngle(Dyadic radians) : radians_(std::move(radians)) {}
    Dyadic radians_;
};

/// The n (theta_j, phi_j) pairs defining the joint measurement.
/// theta_j in [0, 2*pi), phi_j in [-pi/2, pi/2].
struct MeasurementSet {
    struct Angles {
        ExactAngle theta;
        ExactAngle phi;
    };
    std::vector<Angles> parties;

    int n() const { return static_cast<int>(parties.size()); }
    bool equatorial() const;
    /// Exact dyadic sum of all theta_j.
    Dyadic theta_sum() const;

    static MeasurementSet from_strings(const std::vector<std::string>& thetas,
                                       const std::vector<std::string>& phis, AngleUnit unit);
    /// Seeded pseudo-random set with theta uniform over the in-range dyadic
    /// grid and phi over [-pi/2, pi/2].
    static MeasurementSet random(int n, uint64_t seed);

    void validate() const;  // throws ConfigError on out-of-range angles
};

/// pi at the precision of rop (from a write-once high-precision cache).
void cached_pi(mpfr_ptr rop, mpfr_rnd_t rnd);

}  // namespace ghzsim
