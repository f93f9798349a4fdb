#pragma once

#include <cstdint>
#include <vector>

namespace d2dsim {

/// Deterministic 64-bit generator (SplitMix64) with Box-Muller normals.
/// Stdlib distributions are implementation-defined, so scenario generation
/// uses this to keep runs bit-identical for a given seed on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent substream derived from (seed, stream tag).
    static Rng stream(std::uint64_t seed, std::uint64_t tag);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller.
    double normal();

    /// Uniform index in [0, n); n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n);

  private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by Rng (deterministic, unlike std::shuffle).
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_index(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace d2dsim
