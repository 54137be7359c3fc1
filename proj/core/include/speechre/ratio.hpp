#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "speechre/error.hpp"

namespace speechre {

/// Exact non-negative rational, always stored in lowest terms with den > 0.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) {
      num = 0;
      den = 1;
      return;
    }
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend constexpr bool operator==(const Ratio&, const Ratio&) = default;
};

/// Rounds n * r to the nearest integer, halves rounding up. Throws Error on overflow.
std::uint64_t round_scaled(Ratio r, std::uint64_t n);

/// Parses a non-negative decimal such as "1.8", "2", or "0.25" exactly.
Ratio parse_ratio(std::string_view text);

std::string to_string(Ratio r);

}  // namespace speechre
