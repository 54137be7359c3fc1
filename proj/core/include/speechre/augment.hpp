#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "speechre/ratio.hpp"
#include "speechre/types.hpp"

namespace speechre {

// Rule order is fixed; the first rule an instance trips is the one reported.
enum class DropReason { no_relation, missing_entity, pronoun_pair, foreign_relation };

std::string_view to_string(DropReason reason);

struct DropRecord {
  std::string id;
  DropReason reason;
  std::string detail;

  friend bool operator==(const DropRecord&, const DropRecord&) = default;
};

std::string drop_record_to_json(const DropRecord& record);

/// Casefolded pronoun lexicon.
using PronounSet = std::unordered_set<std::string>;

/// Built-in English closed-class list (pronouns-en-v1).
const PronounSet& default_pronouns();
std::string_view default_pronoun_lexicon_version();
/// One pronoun per line; '#' starts a comment.
PronounSet parse_pronoun_list(std::string_view text);
PronounSet load_pronouns(const std::filesystem::path& path);

struct FilterResult {
  std::vector<RelationInstance> kept;
  std::vector<DropRecord> dropped;
};

FilterResult filter_pseudo(std::span<const RelationInstance> candidates,
                           const std::set<std::string>& allowed_relations,
                           const PronounSet& pronouns = default_pronouns());

/// Draws min(round(factor * gold_counts[r]), available) instances per relation,
/// sorted by relation then id. Every input must carry exactly one triplet.
std::vector<RelationInstance> sample_per_relation(std::span<const RelationInstance> kept,
                                                  const std::map<std::string, std::size_t>& gold_counts,
                                                  Ratio factor, std::uint64_t seed);

}  // namespace speechre
