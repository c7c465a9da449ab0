#pragma once

#include <cstdint>

namespace msc {

// SplitMix64 (Steele, Lea, Flood 2014). Every random stream in the project
// (scenario initial states, verification corpora, property-test generators)
// comes from this generator so that runs are reproducible from a single
// documented algorithm.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). Desk-scale bounds; modulo bias is
    /// below 2^-50 and irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    /// Derive an independent child stream (for per-item seeding).
    SplitMix64 fork() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
};

}  // namespace msc
