#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speechre/types.hpp"

namespace speechre {

/// One row of a TextRE export: same instance schema, no audio.
struct SourceRecord {
  std::string id;
  Split split = Split::train;
  std::string transcript;
  std::vector<Triplet> triplets;
  std::optional<double> duration;
};

std::vector<SourceRecord> read_source_records(const std::filesystem::path& path);

struct BuildResult {
  Manifest manifest;
  std::vector<std::string> warnings;
};

/// Mirrors the source split partition. With audio_dir, audio is set to
/// audio_dir/<id>.wav and missing files are reported as warnings.
BuildResult build_manifest(std::string name, std::span<const SourceRecord> records,
                           const std::optional<std::filesystem::path>& audio_dir = std::nullopt,
                           std::string_view source_tag = source::gold);

enum class CountScope { all_splits, train_only };

/// Number of instances mentioning each relation (an instance counts once per relation).
std::map<std::string, std::size_t> relation_instance_counts(const Manifest& m,
                                                            std::optional<Split> split = std::nullopt);

/// Top-k relations by instance count, ties by label; never includes no_relation.
std::vector<std::string> top_k_relations(const Manifest& m, std::size_t k,
                                         CountScope scope = CountScope::all_splits);

/// Keeps the k most frequent relations and every instance whose triplets all
/// fall inside them. Instances with no triplets are removed.
Manifest subset_top_k_relations(const Manifest& m, std::size_t k,
                                CountScope scope = CountScope::all_splits);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;

  std::size_t total() const { return train + dev + test; }
  std::size_t& operator[](Split s);
  std::size_t operator[](Split s) const;

  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

struct DatasetStats {
  SplitCounts instances;
  SplitCounts triplets;
  double avg_tokens = 0.0;
  std::optional<double> avg_audio_seconds;
  std::map<std::string, std::size_t> relation_counts;
};

DatasetStats compute_stats(const Manifest& m);
std::string stats_to_json(const DatasetStats& stats, const Manifest& m);
std::string format_stats_table(const DatasetStats& stats, const Manifest& m);

/// Adds one TTS copy of every train instance per voice, id "<orig>#<voice>".
Manifest plan_upsampling(const Manifest& m, std::span<const std::string> voices);

inline constexpr char kVoiceDelimiter = '#';

/// Uniform seeded sample of n test instances, marked human-pending.
Manifest select_human_subset(const Manifest& m, std::size_t n, std::uint64_t seed);

/// per_relation instances for every relation in the inventory, drawn from the
/// test split without overlap.
Manifest select_human_subset_stratified(const Manifest& m, std::size_t per_relation,
                                        std::uint64_t seed);

}  // namespace speechre
