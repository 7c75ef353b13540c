#pragma once

#include <cstdint>

namespace edlab {

/// Counter-based splitmix64 stream. Every stochastic component takes one of
/// these; independent per-sample streams are derived from (master, index) so
/// parallel batches stay reproducible regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double next_in(double a, double b) { return a + (b - a) * next_unit(); }

private:
    std::uint64_t state_;
};

/// Derive the seed of sample `index` from a master seed. Two rounds of
/// splitmix output keyed by the index keep streams well separated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    Rng mix(master ^ (index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL));
    mix.next_u64();
    return mix.next_u64();
}

}  // namespace edlab
