#ifndef BNSL_RNG_HPP
#define BNSL_RNG_HPP

#include <cstdint>

namespace bnsl {

/// Deterministic 64-bit generator (splitmix64). Every randomized step in the
/// library draws from this so results are bit-identical across platforms and
/// standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased draw from [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Seed for an independent stream identified by (master_seed, stream_index).
/// Pure function of its arguments; callers rely on this for replicate-level
/// reproducibility regardless of execution order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index);

}  // namespace bnsl

#endif
