#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ghzsim/angle.hpp"
#include "ghzsim/dyadic.hpp"
#include "ghzsim/real.hpp"

namespace ghzsim {

unsigned ceil_log2(unsigned n);

/// c = cos(½(φ − (π/2)x)) for x = ±1, rewritten as √((1 + x·sin φ)/2).
/// The cosine is nonnegative on the whole admissible range of φ, so the
/// square-root form carries no sign ambiguity and stays exactly resolvable
/// at φ = 0 boundaries that the direct half-angle form cannot decide.
CachedReal make_c(const Dyadic& phi, int x);

/// s = −sin(½(φ − (π/2)x)) = x·√((1 − x·sin φ)/2); sign(s) = x.
CachedReal make_s(const Dyadic& phi, int x);

/// α² = cos²(½(φ − π/2)) = (1 + sin φ)/2, the +1 outcome weight of the
/// per-party sign draw. Exactly 1/2 at φ = 0.
CachedReal make_alpha_sq(const Dyadic& phi);

/// ℓ-truncations of the (c, s) pair for one party and one outcome sign.
std::pair<Dyadic, Dyadic> eval_cs_truncation(const ExactAngle& phi, int x, unsigned l);

/// cos²(ϑ̂) where ϑ̂ is the exact dyadic sum of the given half-angle
/// truncations, delivered as a (k+1)-truncation. With inputs truncated at
/// scale ≥ k + ⌈log₂ n⌉ + 1 the result is within 2^−k of cos²(Σϑᵢ).
Dyadic approx_cos2_sum(const std::vector<Dyadic>& half_angle_truncations, unsigned k);

/// Observer for each pairwise product in the reduction tree: level is
/// 0-based from the leaves, src/dst are 0-based leaf slots (dst keeps the
/// running product).
using TreeTransmit = std::function<void(unsigned level, unsigned src, unsigned dst)>;

/// Pairwise truncated products over a binomial tree at fixed scale l.
/// Leaf count is padded to a power of two with exact 1 entries.
Dyadic tree_reduce_truncated(std::vector<Dyadic> leaves, unsigned l,
                             const TreeTransmit& transmit = nullptr);

/// Tree product of exact-real handles accurate to 2^−k: each leaf is
/// truncated at ℓ = k + ⌈log₂ n⌉ + 1 and reduced at that scale.
Dyadic tree_reduce_product(const std::vector<const CachedReal*>& leaves, unsigned k);

}  // namespace ghzsim
