#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ghzsim {

/// Message categories. Sync covers the leader's continue/accept/reject and
/// round-restart flags, which the closed-form bit counts exclude.
enum class Phase { Bernoulli, SignBroadcast, CsStream, Sync, Output };

const char* phase_name(Phase p);

struct Message {
    Phase phase;
    int sender;    // 1-based party index, leader = 1
    int receiver;  // 1-based party index
    uint64_t bits;
};

/// Exact per-run cost log. Counters are derived from the message log plus
/// the bit source; messages headed to a lower-indexed party move toward
/// the leader.
struct Transcript {
    uint64_t bits_to_leader = 0;
    uint64_t bits_from_leader = 0;
    uint64_t random_bits = 0;
    uint64_t outer_rounds = 0;
    unsigned inner_k_final = 0;
    unsigned bernoulli_k_final = 0;
    uint64_t parallel_time_steps = 0;
    std::vector<unsigned> inner_k_per_round;
    std::vector<Message> messages;

    void log(Phase phase, int sender, int receiver, uint64_t bits);
    uint64_t phase_bits(Phase phase) const;
    uint64_t total_bits() const { return bits_to_leader + bits_from_leader; }

    /// Newline-delimited "phase sender receiver bits" records.
    std::string export_records() const;
};

}  // namespace ghzsim
