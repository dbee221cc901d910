#pragma once

#include <cstdint>

namespace skg::sim {

// SplitMix64 (Steele, Lea & Flood). The sequence is part of the dataset
// format: alternate implementations reproduce simulated data bit-for-bit.
class SplitMix64 {
   public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) from the top 53 bits.
    constexpr double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

   private:
    std::uint64_t state_;
};

}  // namespace skg::sim
