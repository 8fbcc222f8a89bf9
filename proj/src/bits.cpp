#include "ghzsim/bits.hpp"

#include "ghzsim/errors.hpp"

namespace ghzsim {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

PrngSource::PrngSource(uint64_t seed, uint64_t stream)
    : key_(splitmix64(splitmix64(seed) + stream)) {}

int PrngSource::draw() {
    if (remaining_ == 0) {
        word_ = splitmix64(key_ + counter_++);
        remaining_ = 64;
    }
    --remaining_;
    return static_cast<int>((word_ >> remaining_) & 1u);
}

int TapeSource::draw() {
    if (pos_ >= tape_.size()) throw TapeExhausted();
    return tape_[pos_++] & 1;
}

}  // namespace ghzsim
