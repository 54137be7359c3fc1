#include "speechre/augment.hpp"

#include <algorithm>

#include <json.hpp>

#include "speechre/error.hpp"
#include "speechre/manifest_io.hpp"
#include "speechre/random.hpp"
#include "speechre/text.hpp"

namespace speechre {

namespace detail {
extern const std::string_view kPronounLexicon;
extern const std::string_view kPronounLexiconVersion;
}  // namespace detail

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::no_relation: return "no_relation";
    case DropReason::missing_entity: return "missing_entity";
    case DropReason::pronoun_pair: return "pronoun_pair";
    case DropReason::foreign_relation: return "foreign_relation";
  }
  return "no_relation";
}

std::string drop_record_to_json(const DropRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["reason"] = to_string(record.reason);
  j["detail"] = record.detail;
  return j.dump();
}

PronounSet parse_pronoun_list(std::string_view text) {
  PronounSet out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.insert(casefold(line));
  }
  return out;
}

const PronounSet& default_pronouns() {
  static const PronounSet set = parse_pronoun_list(detail::kPronounLexicon);
  return set;
}

std::string_view default_pronoun_lexicon_version() { return detail::kPronounLexiconVersion; }

PronounSet load_pronouns(const std::filesystem::path& path) { return parse_pronoun_list(read_file(path)); }

namespace {

bool is_pronoun(const std::string& surface, const PronounSet& pronouns) {
  return pronouns.contains(casefold(trim(surface)));
}

std::string describe(const Triplet& t) { return "(" + t.head + ", " + t.relation + ", " + t.tail + ")"; }

std::optional<DropRecord> first_violation(const RelationInstance& inst, const std::set<std::string>& allowed,
                                          const PronounSet& pronouns) {
  const auto& ts = inst.triplets;
  const auto find = [&](auto pred) { return std::find_if(ts.begin(), ts.end(), pred); };
  if (ts.empty()) return DropRecord{inst.id, DropReason::no_relation, "no triplet generated"};
  if (auto it = find([](const Triplet& t) { return t.relation == kNoRelation; }); it != ts.end())
    return DropRecord{inst.id, DropReason::no_relation, describe(*it)};
  if (auto it = find([](const Triplet& t) { return trim(t.head).empty() || trim(t.tail).empty(); }); it != ts.end())
    return DropRecord{inst.id, DropReason::missing_entity,
                      trim(it->head).empty() ? "no subject entity" : "no object entity"};
  if (auto it = find([&](const Triplet& t) { return is_pronoun(t.head, pronouns) && is_pronoun(t.tail, pronouns); });
      it != ts.end())
    return DropRecord{inst.id, DropReason::pronoun_pair, describe(*it)};
  if (auto it = find([&](const Triplet& t) { return !allowed.contains(t.relation); }); it != ts.end())
    return DropRecord{inst.id, DropReason::foreign_relation, it->relation};
  return std::nullopt;
}

}  // namespace

FilterResult filter_pseudo(std::span<const RelationInstance> candidates, const std::set<std::string>& allowed,
                           const PronounSet& pronouns) {
  FilterResult out;
  for (const auto& inst : candidates) {
    if (!inst.is_pseudo())
      throw Error("instance " + inst.id + " is not a pseudo-label candidate (source \"" + inst.source + "\")");
    if (auto drop = first_violation(inst, allowed, pronouns))
      out.dropped.push_back(std::move(*drop));
    else
      out.kept.push_back(inst);
  }
  return out;
}

std::vector<RelationInstance> sample_per_relation(std::span<const RelationInstance> kept,
                                                  const std::map<std::string, std::size_t>& gold_counts,
                                                  Ratio factor, std::uint64_t seed) {
  std::map<std::string, std::vector<const RelationInstance*>> by_relation;
  for (const auto& inst : kept) {
    if (inst.triplets.size() != 1)
      throw Error("instance " + inst.id + " has " + std::to_string(inst.triplets.size()) +
                  " triplets; per-relation sampling needs exactly one");
    by_relation[inst.triplets.front().relation].push_back(&inst);
  }
  std::vector<RelationInstance> out;
  for (auto& [relation, pool] : by_relation) {
    std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    const auto gold = gold_counts.find(relation);
    const std::uint64_t target = gold == gold_counts.end() ? 0 : round_scaled(factor, gold->second);
    const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(target, pool.size()));
    std::mt19937_64 rng(splitmix64(seed ^ fnv1a64(relation)));
    auto picked = sample_indices(pool.size(), take, rng);
    std::sort(picked.begin(), picked.end());
    for (std::size_t i : picked) out.push_back(*pool[i]);
  }
  return out;
}

}  // namespace speechre
