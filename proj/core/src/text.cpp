#include "speechre/text.hpp"

#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace speechre {

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
      continue;
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

bool is_punctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

namespace {

// Walks code points of s; f(begin, end, cp) with byte offsets.
template <typename F>
void for_each_code_point(std::string_view s, F&& f) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    f(static_cast<std::size_t>(start), static_cast<std::size_t>(i), c < 0 ? U'�' : static_cast<char32_t>(c));
  }
}

}  // namespace

std::string_view trim(std::string_view s) {
  std::size_t begin = s.size();
  std::size_t end = 0;
  for_each_code_point(s, [&](std::size_t b, std::size_t e, char32_t c) {
    if (is_space(c)) return;
    if (begin == s.size()) begin = b;
    end = e;
  });
  if (begin >= end) return s.substr(0, 0);
  return s.substr(begin, end - begin);
}

std::vector<WordSpan> word_spans(std::string_view s) {
  std::vector<WordSpan> spans;
  bool in_word = false;
  for_each_code_point(s, [&](std::size_t b, std::size_t e, char32_t c) {
    if (is_space(c)) {
      in_word = false;
      return;
    }
    if (!in_word) spans.push_back({b, e});
    spans.back().end = e;
    in_word = true;
  });
  return spans;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  for (const auto& span : word_spans(s)) words.emplace_back(s.substr(span.begin, span.end - span.begin));
  return words;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const auto& span : word_spans(s)) {
    if (!out.empty()) out.push_back(' ');
    out.append(s.substr(span.begin, span.end - span.begin));
  }
  return out;
}

std::string strip_punctuation(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](std::size_t b, std::size_t e, char32_t c) {
    if (!is_punctuation(c)) out.append(s.substr(b, e - b));
  });
  return out;
}

std::string casefold(std::string_view s) {
  auto folded = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<std::int32_t>(s.size())));
  folded.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  folded.toUTF8String(out);
  return out;
}

std::string normalize_surface(std::string_view s, NormalizationPolicy policy) {
  std::string out(s);
  if (policy.collapse_ws) out = collapse_whitespace(out);
  if (policy.strip_punct) {
    out = strip_punctuation(out);
    if (policy.collapse_ws) out = collapse_whitespace(out);
  }
  if (policy.casefold) out = casefold(out);
  return out;
}

}  // namespace speechre
