#include "bnsl/rng.hpp"

#include <stdexcept>

namespace bnsl {

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be nonzero");
    // Rejection sampling over the top range keeps the draw exactly uniform.
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
    const std::uint64_t a = mix64(master_seed + 0x9e3779b97f4a7c15ULL);
    return mix64(a ^ (stream_index + 0x2545f4914f6cdd1dULL));
}

}  // namespace bnsl
