#pragma once

#include <cstdint>

namespace ballvc {

// Deterministic splitmix64 generator. We avoid <random> distributions because
// their output is implementation-defined; every seeded result in this project
// must be reproducible across compilers and platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound must be positive.
    uint64_t next_below(uint64_t bound) {
        // Rejection sampling to avoid modulo bias.
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int next_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Uniform double in [0,1) with 53 bits of randomness.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool(double p) { return next_double() < p; }

  private:
    uint64_t state_;
};

}  // namespace ballvc
