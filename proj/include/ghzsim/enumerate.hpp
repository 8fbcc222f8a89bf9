#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>

#include "ghzsim/bits.hpp"

namespace ghzsim {

/// Runs a randomized procedure on one finite bit tape; returns an integer
/// label for the outcome, or throws TapeExhausted when the tape is too
/// short to finish.
using TapeRun = std::function<int(BitSource&)>;

/// Exact outcome masses from exhaustive tape enumeration: every tape of
/// length d that completes contributes 2^-d to its label; tapes still
/// undecided at max_depth contribute to `unresolved`.
struct EnumerationResult {
    std::map<int, mpq_class> mass;
    mpq_class unresolved = 0;
};

EnumerationResult enumerate_tapes(const TapeRun& run, unsigned max_depth);

}  // namespace ghzsim
