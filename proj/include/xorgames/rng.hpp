#pragma once

#include <cstdint>

namespace xorgames {

/// Counter-based pseudo-random generator (SplitMix64 output function).
///
/// Draw i of stream s under seed k is mix(scramble(k) + ((s << 20) + i) * GAMMA):
/// a pure function of (seed, stream, i). Consumers key streams by their own
/// unit of work (simulation round, optimizer start), which makes every draw
/// reproducible and schedule-independent -- workers can process streams in any
/// order, or in parallel, and produce identical results. Streams never overlap
/// as long as a single stream draws fewer than 2^20 values.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : counter_(mix(seed ^ kSeedSalt) + (stream << 20) * kGamma) {}

    std::uint64_t next_u64() {
        counter_ += kGamma;
        return mix(counter_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kSeedSalt = 0xA0761D6478BD642FULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t counter_;
};

}  // namespace xorgames
