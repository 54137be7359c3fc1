#include "speechre/align.hpp"

#include <algorithm>
#include <vector>

#include "speechre/error.hpp"
#include "speechre/text.hpp"

namespace speechre {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(decode_utf8(a), decode_utf8(b));
}

int fuzzy_ratio(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 100;
  const std::size_t same = longest - levenshtein(a, b);
  // round(100 * same / longest), halves up
  return static_cast<int>((200 * same + longest) / (2 * longest));
}

int fuzzy_ratio(std::string_view a, std::string_view b) { return fuzzy_ratio(decode_utf8(a), decode_utf8(b)); }

namespace {

// Shrinks [begin, end) of text past leading/trailing punctuation and white space.
WordSpan trim_window(std::string_view text, WordSpan w) {
  const std::u32string cps = decode_utf8(text.substr(w.begin, w.end - w.begin));
  std::vector<std::size_t> offsets;  // byte offset of each code point, plus the end
  offsets.reserve(cps.size() + 1);
  {
    std::size_t off = w.begin;
    for (char32_t c : cps) {
      offsets.push_back(off);
      off += encode_utf8(std::u32string_view(&c, 1)).size();
    }
    offsets.push_back(off);
  }
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  auto droppable = [](char32_t c) { return is_punctuation(c) || is_space(c); };
  while (lo < hi && droppable(cps[lo])) ++lo;
  while (hi > lo && droppable(cps[hi - 1])) --hi;
  return {offsets[lo], offsets[hi]};
}

}  // namespace

AlignmentResult best_fuzzy_substring(std::string_view entity, std::string_view text) {
  if (trim(text).empty()) throw Error("cannot align against empty text");
  const auto words = word_spans(text);
  const std::u32string folded_entity = decode_utf8(casefold(entity));
  const std::u32string raw_entity = decode_utf8(entity);
  const std::size_t max_window = std::max<std::size_t>(1, 2 * word_spans(entity).size());

  bool found = false;
  AlignmentResult best;
  int best_exact = -1;
  for (std::size_t start = 0; start < words.size(); ++start) {
    for (std::size_t len = 1; len <= max_window && start + len <= words.size(); ++len) {
      const WordSpan w = trim_window(text, {words[start].begin, words[start + len - 1].end});
      if (w.begin >= w.end) continue;
      const std::string_view candidate = text.substr(w.begin, w.end - w.begin);
      const int score = fuzzy_ratio(folded_entity, decode_utf8(casefold(candidate)));
      if (found && score < best.score) continue;
      const int exact = fuzzy_ratio(raw_entity, decode_utf8(candidate));
      // Iteration order already prefers the leftmost start, then fewer words.
      if (!found || score > best.score || exact > best_exact) {
        best = {std::string(candidate), score, w.begin, w.end};
        best_exact = exact;
        found = true;
      }
    }
  }
  if (!found) throw Error("text has no alignable word window");
  return best;
}

RelationInstance relabel_instance(const RelationInstance& inst, std::string_view hypothesis, int threshold) {
  if (trim(hypothesis).empty()) throw Error("instance " + inst.id + ": empty hypothesis");
  if (inst.triplets.empty()) throw Error("instance " + inst.id + ": nothing to relabel");
  RelationInstance out = inst;
  out.transcript = std::string(hypothesis);
  out.triplets.clear();
  if (std::find(out.provenance.begin(), out.provenance.end(), kRelabeledTag) == out.provenance.end())
    out.provenance.emplace_back(kRelabeledTag);
  for (const auto& t : inst.triplets) {
    const AlignmentResult head = best_fuzzy_substring(t.head, hypothesis);
    const AlignmentResult tail = best_fuzzy_substring(t.tail, hypothesis);
    if (head.score < threshold || tail.score < threshold) {
      out.provenance.push_back("dropped " + t.head + " | " + t.relation + " | " + t.tail +
                               " (head " + std::to_string(head.score) + ", tail " +
                               std::to_string(tail.score) + ", threshold " + std::to_string(threshold) + ")");
      continue;
    }
    out.triplets.push_back({head.matched, t.relation, tail.matched});
  }
  return out;
}

WordErrors word_errors(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw Error("word error rate needs a non-empty reference");
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      at(i, j) = std::min({at(i - 1, j) + 1, at(i, j - 1) + 1, at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)});

  WordErrors e;
  e.reference_words = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++e.substitutions;
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++e.deletions;
      --i;
    } else {
      ++e.insertions;
      --j;
    }
  }
  return e;
}

Ratio wer(std::string_view reference, std::string_view hypothesis) {
  const auto r = split_words(reference);
  const auto h = split_words(hypothesis);
  return word_errors(r, h).rate();
}

}  // namespace speechre
