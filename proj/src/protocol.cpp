#include "ghzsim/protocol.hpp"

#include <utility>

#include "ghzsim/errors.hpp"
#include "ghzsim/numerics.hpp"

namespace ghzsim {

namespace {

constexpr int kLeader = 1;

Dyadic pow2_margin(unsigned num, unsigned k) {
    return Dyadic::from_parts(+1, num, k);  // num / 2^k
}

// x^2 / 2 for a dyadic x, exact.
Dyadic half_square(const Dyadic& x) {
    Dyadic sq = x * x;
    return Dyadic::from_parts(+1, sq.magnitude(), sq.scale() + 1);
}

}  // namespace

Variant variant_from_string(const std::string& name) {
    if (name == "sequential") return Variant::Sequential;
    if (name == "doubling") return Variant::Doubling;
    if (name == "constant-round") return Variant::ConstantRound;
    if (name == "parallel") return Variant::ParallelTree;
    if (name == "equatorial") return Variant::Equatorial;
    throw ConfigError("unknown variant: " + name);
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Sequential: return "sequential";
        case Variant::Doubling: return "doubling";
        case Variant::ConstantRound: return "constant-round";
        case Variant::ParallelTree: return "parallel";
        case Variant::Equatorial: return "equatorial";
    }
    return "?";
}

ProtocolRunner::ProtocolRunner(MeasurementSet m, ProtocolConfig cfg)
    : m_(std::move(m)), cfg_(cfg), log_n_(ceil_log2(static_cast<unsigned>(m_.n()))) {
    m_.validate();
    if (cfg_.variant == Variant::Equatorial && !m_.equatorial()) {
        throw ConfigError("equatorial variant requires all phi = 0");
    }
    parties_.resize(m_.parties.size());
    for (size_t j = 0; j < parties_.size(); ++j) {
        parties_[j].half_theta = m_.parties[j].theta.half();
        parties_[j].alpha_sq.emplace(make_alpha_sq(m_.parties[j].phi.radians()));
    }
}

const CachedReal& ProtocolRunner::c_of(int j, int x) {
    auto& slot = parties_[j].c[x > 0 ? 0 : 1];
    if (!slot) slot.emplace(make_c(m_.parties[j].phi.radians(), x));
    return *slot;
}

const CachedReal& ProtocolRunner::s_of(int j, int x) {
    auto& slot = parties_[j].s[x > 0 ? 0 : 1];
    if (!slot) slot.emplace(make_s(m_.parties[j].phi.radians(), x));
    return *slot;
}

const std::pair<Dyadic, Dyadic>& ProtocolRunner::cs_pair(int j, int x, unsigned l) {
    auto& memo = parties_[j].cs_memo[x > 0 ? 0 : 1];
    auto it = memo.find(l);
    if (it == memo.end()) {
        it = memo.emplace(l, std::make_pair(c_of(j, x).truncate(l), s_of(j, x).truncate(l)))
                 .first;
    }
    return it->second;
}

BitStream ProtocolRunner::alpha_stream(int j) {
    return [this, j](unsigned i) {
        PartyCache& pc = parties_[j];
        if (!pc.alpha_is_one) {
            pc.alpha_is_one = pc.alpha_sq->truncate(1) == Dyadic::from_signed(2, 1);
        }
        if (*pc.alpha_is_one) return 1;
        while (pc.alpha_bits.size() < i) {
            unsigned next = static_cast<unsigned>(pc.alpha_bits.size()) + 1;
            pc.alpha_bits.push_back(pc.alpha_sq->expansion_bit(next));
        }
        return pc.alpha_bits[i - 1];
    };
}

// p(k) for the mixture Bernoulli: the leader uses its own half-angle
// exactly and l-truncations of everyone else's, l = k + ceil(log2 n) + 1.
// The sum error is at most (n-1)/2^l < 2^-(k+1) and the cosine-square
// evaluation adds at most 2^-(k+1), so |p(k) - cos^2(theta/2)| <= 2^-k.
Dyadic ProtocolRunner::p_of_k(unsigned k) {
    auto it = pk_cache_.find(k);
    if (it != pk_cache_.end()) return it->second;
    const unsigned l = k + log_n_ + 1;
    std::vector<Dyadic> truncs;
    truncs.reserve(parties_.size());
    truncs.push_back(parties_[0].half_theta);
    for (size_t j = 1; j < parties_.size(); ++j) {
        truncs.push_back(parties_[j].half_theta.truncated(l));
    }
    Dyadic pk = approx_cos2_sum(truncs, k);
    pk_cache_.emplace(k, pk);
    return pk;
}

unsigned ProtocolRunner::next_k(unsigned k) const {
    switch (cfg_.variant) {
        case Variant::Sequential:
        case Variant::Equatorial:
            return k + 1;
        default:
            return 2 * k;
    }
}

int ProtocolRunner::bernoulli_phase(BitSource& src, Transcript& t) {
    const int n = m_.n();
    std::vector<unsigned> cursor(parties_.size(), 0);
    unsigned k_last = 0;
    ApproxOracle orc = [&](unsigned k) {
        k_last = k;
        const unsigned l = k + log_n_ + 1;
        for (int j = 2; j <= n; ++j) {
            unsigned& cur = cursor[j - 1];
            if (cur >= l) continue;
            // 3 integer-part bits ride along with the first fragment.
            uint64_t bits = (cur == 0 ? 3 : 0) + (l - cur);
            t.log(Phase::Bernoulli, j, kLeader, bits);
            t.parallel_time_steps += bits;
            cur = l;
        }
        return p_of_k(k);
    };
    int y = bernoulli_from_approximations(orc, src, cfg_.depth_cap);
    t.bernoulli_k_final = k_last;
    return 1 - y;  // B = 1 targets the sin^2(theta/2) branch
}

std::vector<int> ProtocolRunner::propose(BitSource& src, Transcript& t) {
    const int n = m_.n();
    const bool local = cfg_.variant == Variant::Equatorial;
    int s_bit = src.next_bit();
    if (!local) {
        for (int j = 2; j <= n; ++j) t.log(Phase::SignBroadcast, kLeader, j, 1);
        if (cfg_.variant == Variant::ParallelTree) {
            t.parallel_time_steps += log_n_;
        } else {
            t.parallel_time_steps += static_cast<uint64_t>(n - 1);
        }
    }
    std::vector<int> x(parties_.size());
    for (size_t j = 0; j < parties_.size(); ++j) {
        int draw = rademacher(alpha_stream(static_cast<int>(j)), src, cfg_.depth_cap);
        x[j] = s_bit ? -draw : draw;
    }
    return x;
}

// One rejection test: U(q1+q2) < p_sigma decided through shrinking
// enclosures. At step k the streamed c/s truncations sit at scale
// l = k + 3 + ceil(log2 n), so the exact products a~1, a~2 are within
// n/2^l <= 2^-(k+3) of a1, a2. Then |L - (q1+q2)| <= 2^-(k+1) and
// |R - p_sigma| <= 2^-(k+1), and the k unseen bits of U contribute at
// most L/2^k <= 2/2^k, so U(k)L - R tracks U(q1+q2) - p_sigma within
// 3/2^k and a verdict at margin 4/2^k is certain.
bool ProtocolRunner::acceptance_loop(int sigma, RoundState& st, BitSource& src, Transcript& t) {
    const int n = m_.n();
    const bool tree = cfg_.variant == Variant::ParallelTree;
    const bool local = cfg_.variant == Variant::Equatorial;
    Dyadic u;
    unsigned u_bits = 0;
    const unsigned k0 = cfg_.variant == Variant::ConstantRound ? static_cast<unsigned>(n) : 1;
    for (unsigned k = k0; k <= cfg_.depth_cap; k = next_k(k)) {
        Dyadic a1(1), a2(1);
        if (tree) {
            // Fresh tree pass per k: two reductions at l = (k+2)+log_n+1,
            // giving (k+2)-approximations of the two products.
            const unsigned l = k + 2 + log_n_ + 1;
            std::vector<Dyadic> cs, ss;
            for (int j = 0; j < n; ++j) {
                const auto& [cj, sj] = cs_pair(j, st.x[j], l);
                cs.push_back(cj);
                ss.push_back(sj);
            }
            TreeTransmit send = [&](unsigned, unsigned s_leaf, unsigned d_leaf) {
                t.log(Phase::CsStream, static_cast<int>(s_leaf) + 1, static_cast<int>(d_leaf) + 1,
                      l + 1);
            };
            a1 = tree_reduce_truncated(std::move(cs), l, send);
            a2 = tree_reduce_truncated(std::move(ss), l, send);
            t.parallel_time_steps += 2ull * (l + 1) * log_n_;
        } else {
            const unsigned l = k + 3 + log_n_;
            for (int j = 0; j < n; ++j) {
                const auto& [cj, sj] = cs_pair(j, st.x[j], l);
                if (j > 0 && !local) {
                    unsigned& cur = st.cs_cursor[j];
                    if (cur < l) {
                        // Two sign bits ride along with the first fragment.
                        uint64_t bits = (cur == 0 ? 2 : 0) + 2ull * (l - cur);
                        t.log(Phase::CsStream, j + 1, kLeader, bits);
                        t.parallel_time_steps += bits;
                        cur = l;
                    }
                }
                a1 = a1 * cj;
                a2 = a2 * sj;
            }
        }
        Dyadic L = a1 * a1 + a2 * a2;
        Dyadic R = half_square(sigma > 0 ? a1 + a2 : a1 - a2);
        while (u_bits < k) {
            ++u_bits;
            if (src.next_bit()) u = u + pow2_margin(1, u_bits);
        }
        Dyadic d = u * L - R;
        Dyadic margin = pow2_margin(4, k);
        bool accept = d < -margin;
        bool reject = d > margin;
        if (!local) {
            for (int j = 2; j <= n; ++j) t.log(Phase::Sync, kLeader, j, 2);
            if (tree) {
                t.parallel_time_steps += 2ull * log_n_;
            } else {
                t.parallel_time_steps += 2ull * (n - 1);
            }
        }
        if (accept || reject) {
            t.inner_k_final = k;
            t.inner_k_per_round.push_back(k);
            return accept;
        }
    }
    throw DepthExceeded("rejection test undecided at depth cap " +
                        std::to_string(cfg_.depth_cap));
}

ProtocolRunner::RoundResult ProtocolRunner::single_round(int sigma, BitSource& src,
                                                         Transcript& t) {
    RoundState st;
    st.x = propose(src, t);
    st.cs_cursor.assign(parties_.size(), 0);
    bool accepted = acceptance_loop(sigma, st, src, t);
    return {accepted, std::move(st.x)};
}

RunResult ProtocolRunner::run(BitSource& src) {
    const int n = m_.n();
    const bool local = cfg_.variant == Variant::Equatorial;
    RunResult res;
    Transcript& t = res.transcript;
    const uint64_t bits_before = src.bits_consumed();
    int b = bernoulli_phase(src, t);
    int sigma = b == 0 ? +1 : -1;
    for (;;) {
        RoundResult round = single_round(sigma, src, t);
        ++t.outer_rounds;
        if (!local) {
            // Round verdict: restart or done.
            for (int j = 2; j <= n; ++j) t.log(Phase::Sync, kLeader, j, 1);
            t.parallel_time_steps +=
                cfg_.variant == Variant::ParallelTree ? log_n_ : static_cast<uint64_t>(n - 1);
        }
        if (round.accepted) {
            res.outcome = std::move(round.outcome);
            break;
        }
        if (t.outer_rounds >= cfg_.depth_cap) {
            throw DepthExceeded("no accepted proposal within " + std::to_string(t.outer_rounds) +
                                " rounds");
        }
    }
    if (local) {
        // The leader held every X_j; ship them out one by one.
        for (int j = 2; j <= n; ++j) t.log(Phase::Output, kLeader, j, 1);
        t.parallel_time_steps += static_cast<uint64_t>(n - 1);
    }
    t.random_bits = src.bits_consumed() - bits_before;
    return res;
}

}  // namespace ghzsim
