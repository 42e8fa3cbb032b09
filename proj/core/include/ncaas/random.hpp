#pragma once

#include <cstdint>

namespace ncaas {

/// Injectable randomness. Production code uses SplitMix64; tests may
/// substitute scripted sources to force specific coding vectors.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual uint64_t next_u64() = 0;

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform field element for a power-of-two field order.
    uint8_t next_element(unsigned order) {
        return static_cast<uint8_t>(next_u64() & (order - 1));
    }
};

/// SplitMix64 (Steele, Lea, Flood 2014). 64-bit state, one
/// multiply-xor-shift finalizer per output.
class SplitMix64 final : public RandomSource {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() override {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    uint64_t state_;
};

/// Per-run seed derivation: the SplitMix64 finalizer applied to
/// master + index * golden-gamma. Published so reruns are reproducible.
inline uint64_t mix_seed(uint64_t master, uint64_t index) {
    uint64_t z = master + index * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace ncaas
