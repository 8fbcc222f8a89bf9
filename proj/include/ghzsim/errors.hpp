#pragma once

#include <stdexcept>
#include <string>

namespace ghzsim {

/// A truncation boundary could not be resolved within the guard-bit cap.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A sampling loop exceeded its configured iteration cap (pathological tie run).
struct DepthExceeded : std::runtime_error {
    explicit DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A finite replay tape ran out of bits.
struct TapeExhausted : std::runtime_error {
    TapeExhausted() : std::runtime_error("tape exhausted") {}
};

/// Enumeration of all outcomes was requested beyond the configured cap.
struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// An equatorial-only operation received a non-equatorial measurement set.
struct NotEquatorial : std::runtime_error {
    explicit NotEquatorial(const std::string& what) : std::runtime_error(what) {}
};

/// Goodness-of-fit testing needs more samples than were provided.
struct InsufficientSamples : std::runtime_error {
    explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ghzsim
