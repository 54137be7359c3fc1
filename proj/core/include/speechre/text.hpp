#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace speechre {

struct NormalizationPolicy {
  bool casefold = false;
  bool strip_punct = false;
  bool collapse_ws = true;

  /// Default for scoring: only whitespace runs are collapsed.
  static constexpr NormalizationPolicy strict() { return {false, false, true}; }
  static constexpr NormalizationPolicy relaxed() { return {true, true, true}; }
  static constexpr NormalizationPolicy identity() { return {false, false, false}; }

  friend constexpr bool operator==(const NormalizationPolicy&, const NormalizationPolicy&) = default;
};

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

bool is_space(char32_t c);
/// True for Unicode general categories Pc, Pd, Ps, Pe, Pi, Pf, Po.
bool is_punctuation(char32_t c);

/// Trims and collapses runs of Unicode white space to one U+0020.
std::string collapse_whitespace(std::string_view s);
std::string strip_punctuation(std::string_view s);
/// Unicode full case folding.
std::string casefold(std::string_view s);

std::string_view trim(std::string_view s);

/// Applies collapse_ws, strip_punct, casefold in that order. Whitespace is
/// re-collapsed after punctuation removal so the result is idempotent.
std::string normalize_surface(std::string_view s, NormalizationPolicy policy);

/// Splits on Unicode white space; empty tokens are never produced.
std::vector<std::string> split_words(std::string_view s);

struct WordSpan {
  std::size_t begin;
  std::size_t end;
};
/// Byte spans of the white-space separated words of s.
std::vector<WordSpan> word_spans(std::string_view s);

}  // namespace speechre
