#pragma once

#include <cstdint>

namespace takagi {

// Counter-based generator: word(i) is a pure function of (seed, i), so any
// partition of the index space across threads reproduces the serial stream.
// Mixing is the splitmix64 output function over seed + (i+1) * golden ratio.
struct CounterRng {
    std::uint64_t seed = 0;

    std::uint64_t word(std::uint64_t index) const {
        std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    // uniform in [0,1) with 53 random bits
    double uniform(std::uint64_t index) const {
        return static_cast<double>(word(index) >> 11) * 0x1.0p-53;
    }
};

}  // namespace takagi
