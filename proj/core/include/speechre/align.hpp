#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "speechre/ratio.hpp"
#include "speechre/types.hpp"

namespace speechre {

/// Code-point edit distance (insert, delete, substitute; unit costs).
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// round(100 * (1 - d / max(|a|, |b|))) over code points; 100 for two empty strings.
int fuzzy_ratio(std::string_view a, std::string_view b);
int fuzzy_ratio(std::u32string_view a, std::u32string_view b);

struct AlignmentResult {
  std::string matched;
  int score = 0;
  std::size_t begin = 0;  // byte offsets into the searched text
  std::size_t end = 0;

  friend bool operator==(const AlignmentResult&, const AlignmentResult&) = default;
};

/// Best case-insensitive match of entity among the word windows of text.
///
/// Candidates are windows of 1..max(1, 2 * words(entity)) consecutive words,
/// with punctuation and white space trimmed from both ends. Ties go to the
/// leftmost start word, then to the window with fewer words.
AlignmentResult best_fuzzy_substring(std::string_view entity, std::string_view text);

inline constexpr int kDefaultRelabelThreshold = 50;

/// Replaces each entity with its best window in hypothesis and the transcript
/// with hypothesis. Triplets whose head or tail falls below threshold are
/// dropped and noted in provenance. Relation labels are never touched.
RelationInstance relabel_instance(const RelationInstance& inst, std::string_view hypothesis,
                                  int threshold = kDefaultRelabelThreshold);

inline constexpr std::string_view kRelabeledTag = "relabeled";

struct WordErrors {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_words = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  Ratio rate() const { return {errors(), reference_words}; }

  WordErrors& operator+=(const WordErrors& o) {
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    reference_words += o.reference_words;
    return *this;
  }
};

/// Minimum-edit word alignment counts. Throws Error for an empty reference.
WordErrors word_errors(std::span<const std::string> reference, std::span<const std::string> hypothesis);

/// Word error rate of two raw strings tokenized with split_words.
Ratio wer(std::string_view reference, std::string_view hypothesis);

}  // namespace speechre
