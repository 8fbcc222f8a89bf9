#pragma once

#include <functional>

#include "ghzsim/bits.hpp"
#include "ghzsim/dyadic.hpp"
#include "ghzsim/real.hpp"

namespace ghzsim {

/// i-th fractional bit (1-indexed) of a binary expansion in [0, 1];
/// the value 1 is encoded as the all-ones expansion.
using BitStream = std::function<int(unsigned)>;

/// k -> p(k) with |p(k) - p| <= 2^-k for the target parameter p.
using ApproxOracle = std::function<Dyadic(unsigned)>;

inline constexpr unsigned kDefaultDepthCap = 10000;

/// Expansion stream backed by an exact-real handle with value in [0, 1].
BitStream make_expansion_stream(const CachedReal& value);

/// Exact Bernoulli(p) by bitwise comparison of a fresh uniform U against
/// the expansion of p: scan until the first index where they differ and
/// return 1 iff U is below p there. Expected 2 bits consumed.
int bernoulli_from_truncations(const BitStream& p_bits, BitSource& src,
                               unsigned depth_cap = kDefaultDepthCap);

/// Exact Bernoulli(p) given only 2^-k approximations of p: at step k the
/// k-bit uniform prefix U(k) is compared against p(k) with margins wide
/// enough to absorb both the approximation and the unseen tail of U.
/// Expected iterations <= 4.
int bernoulli_from_approximations(const ApproxOracle& orc, BitSource& src,
                                  unsigned depth_cap = kDefaultDepthCap);

/// +1 with probability exactly alpha_sq, -1 otherwise.
int rademacher(const BitStream& alpha_sq_bits, BitSource& src,
               unsigned depth_cap = kDefaultDepthCap);

}  // namespace ghzsim
