#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghzsim/angle.hpp"
#include "ghzsim/bernoulli.hpp"
#include "ghzsim/bits.hpp"
#include "ghzsim/dyadic.hpp"
#include "ghzsim/real.hpp"
#include "ghzsim/transcript.hpp"

namespace ghzsim {

enum class Variant { Sequential, Doubling, ConstantRound, ParallelTree, Equatorial };

Variant variant_from_string(const std::string& name);  // ConfigError on unknown
std::string variant_name(Variant v);

struct ProtocolConfig {
    Variant variant = Variant::Sequential;
    unsigned depth_cap = kDefaultDepthCap;
};

struct RunResult {
    std::vector<int> outcome;
    Transcript transcript;
};

/// One simulated protocol instance: a leader (party 1) plus n-1 parties,
/// all executed in-process with exact bit accounting. A runner is reusable
/// across trials; numeric caches it holds are deterministic functions of
/// the measurement set and only ever refine.
class ProtocolRunner {
  public:
    explicit ProtocolRunner(MeasurementSet m, ProtocolConfig cfg = {});

    RunResult run(BitSource& src);

    /// Phase entry points, exposed so exhaustive tape enumeration can
    /// weigh each stage separately.
    /// The distributed Bernoulli for the mixture branch: returns B, which
    /// is 1 with probability sin^2(theta/2) (the p2 branch).
    int bernoulli_phase(BitSource& src, Transcript& t);

    struct RoundResult {
        bool accepted;
        std::vector<int> outcome;
    };
    /// One propose-and-test round targeting p1 (sigma=+1) or p2 (sigma=-1).
    RoundResult single_round(int sigma, BitSource& src, Transcript& t);

    const MeasurementSet& measurement() const { return m_; }
    const ProtocolConfig& config() const { return cfg_; }

  private:
    struct PartyCache {
        Dyadic half_theta;
        std::optional<CachedReal> alpha_sq;
        std::optional<CachedReal> c[2], s[2];  // slot 0: x=+1, slot 1: x=-1
        std::map<unsigned, std::pair<Dyadic, Dyadic>> cs_memo[2];
        std::vector<int> alpha_bits;
        std::optional<bool> alpha_is_one;
    };

    struct RoundState {
        std::vector<int> x;
        std::vector<unsigned> cs_cursor;  // highest l streamed per party
    };

    const CachedReal& c_of(int j, int x);
    const CachedReal& s_of(int j, int x);
    const std::pair<Dyadic, Dyadic>& cs_pair(int j, int x, unsigned l);
    BitStream alpha_stream(int j);
    Dyadic p_of_k(unsigned k);
    unsigned next_k(unsigned k) const;

    std::vector<int> propose(BitSource& src, Transcript& t);
    bool acceptance_loop(int sigma, RoundState& st, BitSource& src, Transcript& t);

    MeasurementSet m_;
    ProtocolConfig cfg_;
    unsigned log_n_;
    std::vector<PartyCache> parties_;
    std::map<unsigned, Dyadic> pk_cache_;
};

}  // namespace ghzsim
