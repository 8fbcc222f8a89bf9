#include "ghzsim/enumerate.hpp"

#include <vector>

#include "ghzsim/errors.hpp"

namespace ghzsim {

namespace {

mpq_class tape_weight(size_t len) {
    mpq_class w(1);
    mpz_mul_2exp(w.get_den().get_mpz_t(), w.get_den().get_mpz_t(), len);
    return w;
}

void explore(const TapeRun& run, unsigned max_depth, std::vector<uint8_t>& tape,
             EnumerationResult& out) {
    // A prefix is only extended after a shorter run threw, so a completing
    // run consumes the whole tape and owns exactly 2^-len of tape space.
    try {
        TapeSource src(tape);
        int label = run(src);
        out.mass[label] += tape_weight(tape.size());
        return;
    } catch (const TapeExhausted&) {
    }
    if (tape.size() >= max_depth) {
        out.unresolved += tape_weight(tape.size());
        return;
    }
    for (uint8_t bit : {0, 1}) {
        tape.push_back(bit);
        explore(run, max_depth, tape, out);
        tape.pop_back();
    }
}

}  // namespace

EnumerationResult enumerate_tapes(const TapeRun& run, unsigned max_depth) {
    EnumerationResult out;
    std::vector<uint8_t> tape;
    explore(run, max_depth, tape, out);
    return out;
}

}  // namespace ghzsim
