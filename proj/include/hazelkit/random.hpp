#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hazelkit::rng {

// All sampling in the toolkit draws from mt19937_64 through the helpers
// below. std::uniform_int_distribution is implementation-defined, so it is
// avoided: these helpers give the same sequence on every platform.
using Engine = std::mt19937_64;

/// Uniform draw in [0, n) via rejection sampling. n must be > 0.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine();
    while (v >= limit) v = engine();
    return v % n;
}

/// Deterministic Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& values, Engine& engine) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(engine, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace hazelkit::rng
