#pragma once

#include <cstdint>

namespace outflow {

// Counter-based deterministic generator (splitmix64 applied to seed + counter).
// Stateless draws: sample k of a stream keyed by `seed` is the same on every
// platform and in any evaluation order, which is what makes the randomized
// verifiers reproducible byte-for-byte.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(seed_ + 0x632be59bd9b4e019ull * ++counter_); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace outflow
