#include "ghzsim/bernoulli.hpp"

#include <memory>
#include <optional>
#include <string>

#include "ghzsim/errors.hpp"

namespace ghzsim {

BitStream make_expansion_stream(const CachedReal& value) {
    // The all-ones convention for an exact 1 cannot fall out of the floor
    // rule (floor(1 * 2^i) has a zero fractional mantissa), so detect it.
    auto is_one = std::make_shared<std::optional<bool>>();
    return [&value, is_one](unsigned i) {
        if (!is_one->has_value()) *is_one = value.truncate(1) == Dyadic::from_signed(2, 1);
        if (**is_one) return 1;
        return value.expansion_bit(i);
    };
}

int bernoulli_from_truncations(const BitStream& p_bits, BitSource& src, unsigned depth_cap) {
    for (unsigned i = 1; i <= depth_cap; ++i) {
        int u = src.next_bit();
        int p = p_bits(i);
        if (u != p) return u < p ? 1 : 0;
    }
    throw DepthExceeded("expansion comparison still tied after " + std::to_string(depth_cap) +
                        " bits");
}

int bernoulli_from_approximations(const ApproxOracle& orc, BitSource& src, unsigned depth_cap) {
    Dyadic u;
    for (unsigned k = 1; k <= depth_cap; ++k) {
        u = u + Dyadic::from_parts(+1, src.next_bit(), k);
        Dyadic pk = orc(k);
        Dyadic margin = Dyadic::from_parts(+1, 1, k);
        if (u <= pk - margin - margin) return 1;
        if (u >= pk + margin) return 0;
    }
    throw DepthExceeded("approximation comparison undecided after " + std::to_string(depth_cap) +
                        " iterations");
}

int rademacher(const BitStream& alpha_sq_bits, BitSource& src, unsigned depth_cap) {
    return bernoulli_from_truncations(alpha_sq_bits, src, depth_cap) == 1 ? +1 : -1;
}

}  // namespace ghzsim
