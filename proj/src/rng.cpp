#include "swarmgrid/rng.hpp"

#include <limits>

namespace swarmgrid {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = engine_();
    while (v >= limit) {
        v = engine_();
    }
    return v % n;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Rng Rng::fork(std::uint64_t stream) const {
    std::mt19937_64 copy = engine_;
    const std::uint64_t base = copy();
    return Rng(std::mt19937_64(splitmix64(base ^ splitmix64(stream))));
}

}  // namespace swarmgrid
