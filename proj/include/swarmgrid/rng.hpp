#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace swarmgrid {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so bounded integers and
/// shuffles are derived here directly from the engine output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Uniform double in [0, 1).
    double unit();

    bool chance(double p) { return unit() < p; }

    /// Independent generator for a named sub-stream.
    Rng fork(std::uint64_t stream) const;

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    template <typename T>
    const T& pick(std::span<const T> items) {
        return items[below(items.size())];
    }

private:
    explicit Rng(std::mt19937_64 engine) : engine_(engine) {}

    std::mt19937_64 engine_;
};

}  // namespace swarmgrid
