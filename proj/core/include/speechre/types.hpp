#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace speechre {

inline constexpr std::string_view kTripletMarker = "<triplet>";
inline constexpr std::string_view kSubjMarker = "<subj>";
inline constexpr std::string_view kObjMarker = "<obj>";

/// Label that marks an absent relation in TextRE sources (ReTACRED convention).
inline constexpr std::string_view kNoRelation = "no_relation";

enum class Split { train, dev, test };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

/// Provenance tags carried in RelationInstance::source.
namespace source {
inline constexpr std::string_view gold = "gold";
inline constexpr std::string_view tts = "tts";
inline constexpr std::string_view human = "human";
inline constexpr std::string_view human_pending = "human-pending";
inline constexpr std::string_view pseudo = "pseudo";
}  // namespace source

/// One relational fact: (head, relation, tail).
///
/// Fields carry no leading/trailing whitespace and no marker substrings.
/// Use Triplet::make for a checked construction; aggregate initialization is
/// unchecked and is validated at manifest boundaries.
struct Triplet {
  std::string head;
  std::string relation;
  std::string tail;

  static Triplet make(std::string head, std::string relation, std::string tail);

  friend auto operator<=>(const Triplet&, const Triplet&) = default;
};

/// Throws Error when the triplet violates its invariants. Empty entity fields
/// are tolerated only when allow_empty_entities is set (pseudo-label candidates).
void validate_triplet(const Triplet& t, bool allow_empty_entities = false);

bool contains_marker(std::string_view text);

struct RelationInstance {
  std::string id;
  Split split = Split::train;
  std::string transcript;
  std::optional<std::string> hypothesis;
  std::optional<std::string> audio;
  std::optional<std::string> voice;
  std::optional<double> duration;
  std::string source{source::gold};
  std::vector<Triplet> triplets;
  std::vector<std::string> provenance;

  bool is_pseudo() const { return source == source::pseudo; }

  friend bool operator==(const RelationInstance&, const RelationInstance&) = default;
};

struct Manifest {
  std::string name;
  std::vector<std::string> relations;
  std::vector<RelationInstance> instances;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Checks every Manifest invariant: unique ids, known relations, a duplicate-free
/// inventory, and fully labeled non-pseudo instances. Throws Error naming the
/// offending instance.
void validate_manifest(const Manifest& m);

void validate_instance(const RelationInstance& inst);

}  // namespace speechre
