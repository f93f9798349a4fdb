#include "d2dsim/rng.hpp"

#include <cmath>
#include <numbers>

namespace d2dsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t tag) {
    // one extra scramble so nearby (seed, tag) pairs decorrelate
    std::uint64_t s = seed ^ (tag * 0xD1B54A32D192ED03ull);
    splitmix64(s);
    return Rng(s);
}

std::uint64_t Rng::next_u64() {
    return splitmix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    // Box-Muller; 1-u keeps the log argument in (0, 1]
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // modulo bias is negligible for the index ranges used here (n <= ~1e6)
    return next_u64() % n;
}

}  // namespace d2dsim
