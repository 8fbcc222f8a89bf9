#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ghzsim {

/// Counted stream of i.i.d. unbiased bits; the only randomness in the
/// system. Single-owner: independent trials each derive their own source
/// by seed-splitting (seed, trial index).
class BitSource {
  public:
    virtual ~BitSource() = default;

    int next_bit() {
        ++count_;
        return draw();
    }

    uint64_t bits_consumed() const { return count_; }

  protected:
    virtual int draw() = 0;

  private:
    uint64_t count_ = 0;
};

/// Deterministic counter-based generator. Word i is the SplitMix64
/// finalizer applied to key + i, with the key derived from (seed, stream);
/// bits are extracted from each 64-bit word most-significant first.
class PrngSource final : public BitSource {
  public:
    explicit PrngSource(uint64_t seed, uint64_t stream = 0);

  protected:
    int draw() override;

  private:
    uint64_t key_;
    uint64_t counter_ = 0;
    uint64_t word_ = 0;
    int remaining_ = 0;
};

/// Replayable recorded tape. Throws TapeExhausted when the tape runs out,
/// which the exhaustive enumeration driver uses to branch.
class TapeSource final : public BitSource {
  public:
    explicit TapeSource(std::span<const uint8_t> tape) : tape_(tape) {}

  protected:
    int draw() override;

  private:
    std::span<const uint8_t> tape_;
    size_t pos_ = 0;
};

uint64_t splitmix64(uint64_t x);

}  // namespace ghzsim
