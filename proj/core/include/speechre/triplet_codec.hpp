#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "speechre/types.hpp"

namespace speechre {

// Linearized target format:
//   <triplet> head <subj> tail <obj> relation [<triplet> ...]
// consecutive triplets separated by a single space.

std::string linearize(std::span<const Triplet> triplets);

/// Exact inverse of linearize, up to whitespace between markers and fields.
/// Throws ParseError on any deviation.
std::vector<Triplet> parse_strict(std::string_view s);

enum class WarningKind { truncated_triplet, missing_field, empty_field, stray_text };

std::string_view to_string(WarningKind kind);

struct ParseWarning {
  WarningKind kind;
  std::size_t position;
  std::string detail;

  friend bool operator==(const ParseWarning&, const ParseWarning&) = default;
};

struct LenientParse {
  std::vector<Triplet> triplets;
  std::vector<ParseWarning> warnings;
};

/// Total parser for raw model generations. Incomplete segments are dropped
/// (never imputed) and reported as warnings.
LenientParse parse_lenient(std::string_view s);

}  // namespace speechre
