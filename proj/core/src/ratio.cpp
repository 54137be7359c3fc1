#include "speechre/ratio.hpp"

#include <charconv>

namespace speechre {

Ratio parse_ratio(std::string_view text) {
  const auto fail = [&] { return Error("not a non-negative decimal: \"" + std::string(text) + "\""); };
  if (text.empty()) throw fail();
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw fail();
    seen_digit = true;
    if (num > (UINT64_MAX - 9) / 10 || (seen_point && den > UINT64_MAX / 10)) throw fail();
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) throw fail();
  return {num, den};
}

std::uint64_t round_scaled(Ratio r, std::uint64_t n) {
  if (r.num != 0 && n > (UINT64_MAX / 2 - r.den) / r.num) throw Error("ratio scaling overflows");
  return (2 * r.num * n + r.den) / (2 * r.den);
}

std::string to_string(Ratio r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace speechre
