#include "ghzsim/transcript.hpp"

#include <sstream>

namespace ghzsim {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Bernoulli: return "bernoulli";
        case Phase::SignBroadcast: return "sign";
        case Phase::CsStream: return "cs";
        case Phase::Sync: return "sync";
        case Phase::Output: return "output";
    }
    return "?";
}

void Transcript::log(Phase phase, int sender, int receiver, uint64_t bits) {
    if (bits == 0) return;
    messages.push_back({phase, sender, receiver, bits});
    if (receiver < sender) {
        bits_to_leader += bits;
    } else {
        bits_from_leader += bits;
    }
}

uint64_t Transcript::phase_bits(Phase phase) const {
    uint64_t total = 0;
    for (const Message& m : messages) {
        if (m.phase == phase) total += m.bits;
    }
    return total;
}

std::string Transcript::export_records() const {
    std::ostringstream out;
    for (const Message& m : messages) {
        out << phase_name(m.phase) << ' ' << m.sender << ' ' << m.receiver << ' ' << m.bits
            << '\n';
    }
    return out.str();
}

}  // namespace ghzsim
