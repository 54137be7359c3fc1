#include "speechre/types.hpp"

#include <set>
#include <unordered_set>

#include "speechre/error.hpp"
#include "speechre/text.hpp"

namespace speechre {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "dev") return Split::dev;
  if (text == "test") return Split::test;
  return std::nullopt;
}

bool contains_marker(std::string_view text) {
  return text.find(kTripletMarker) != std::string_view::npos ||
         text.find(kSubjMarker) != std::string_view::npos ||
         text.find(kObjMarker) != std::string_view::npos;
}

namespace {

void check_field(std::string_view name, std::string_view value, bool allow_empty) {
  if (value.empty()) {
    if (allow_empty) return;
    throw Error("triplet " + std::string(name) + " is empty");
  }
  if (trim(value).size() != value.size())
    throw Error("triplet " + std::string(name) + " has surrounding whitespace: \"" + std::string(value) + "\"");
  if (contains_marker(value))
    throw Error("triplet " + std::string(name) + " contains a reserved marker: \"" + std::string(value) + "\"");
}

}  // namespace

void validate_triplet(const Triplet& t, bool allow_empty_entities) {
  check_field("head", t.head, allow_empty_entities);
  check_field("relation", t.relation, false);
  check_field("tail", t.tail, allow_empty_entities);
}

Triplet Triplet::make(std::string head, std::string relation, std::string tail) {
  Triplet t{std::move(head), std::move(relation), std::move(tail)};
  validate_triplet(t);
  return t;
}

void validate_instance(const RelationInstance& inst) {
  if (inst.id.empty()) throw Error("instance id is empty");
  const bool pseudo = inst.is_pseudo();
  if (inst.source.empty()) throw Error("instance " + inst.id + ": source tag is empty");
  if (inst.triplets.empty() && !pseudo)
    throw Error("instance " + inst.id + ": no triplets (only pseudo instances may be unlabeled)");
  for (const auto& t : inst.triplets) {
    try {
      validate_triplet(t, pseudo);
    } catch (const Error& e) {
      throw Error("instance " + inst.id + ": " + e.what());
    }
  }
  if (inst.duration && !(*inst.duration >= 0.0))
    throw Error("instance " + inst.id + ": negative duration");
}

void validate_manifest(const Manifest& m) {
  std::unordered_set<std::string_view> inventory;
  for (const auto& r : m.relations) {
    if (r.empty()) throw Error("relation inventory contains an empty label");
    if (!inventory.insert(r).second) throw Error("relation inventory lists \"" + r + "\" twice");
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& inst : m.instances) {
    validate_instance(inst);
    if (!ids.insert(inst.id).second) throw Error("duplicate instance id \"" + inst.id + "\"");
    for (const auto& t : inst.triplets) {
      if (!inventory.contains(t.relation))
        throw Error("instance " + inst.id + ": unknown relation label \"" + t.relation + "\"");
    }
  }
}

}  // namespace speechre
