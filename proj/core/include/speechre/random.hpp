#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace speechre {

// Portable sampling: std::mt19937_64 output is fixed by the standard, the
// draws below are too, so seeded results match across standard libraries.

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform integer in [0, bound) by rejection; bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng);

}  // namespace speechre
