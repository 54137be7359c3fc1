#include "speechre/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "speechre/error.hpp"
#include "speechre/random.hpp"
#include "speechre/text.hpp"

namespace speechre {

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t& SplitCounts::operator[](Split s) {
  switch (s) {
    case Split::train: return train;
    case Split::dev: return dev;
    case Split::test: return test;
  }
  return train;
}

std::size_t SplitCounts::operator[](Split s) const { return const_cast<SplitCounts&>(*this)[s]; }

std::vector<SourceRecord> read_source_records(const std::filesystem::path& path) {
  static const std::set<std::string> allowed = {"kind", "id", "split", "transcript", "triplets", "duration"};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open source " + path.string());
  std::vector<SourceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fail = [&](const std::string& msg) {
      return Error(path.string() + ": line " + std::to_string(line_no) + ": " + msg);
    };
    if (trim(line).empty()) throw fail("empty line");
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed JSON: ") + e.what());
    }
    try {
      if (!j.is_object()) throw Error("expected a JSON object");
      for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw Error("unknown field \"" + key + "\"");
      if (j.contains("kind") && j["kind"] != "instance") throw Error("expected kind \"instance\"");
      SourceRecord r;
      r.id = j.at("id").get<std::string>();
      const auto split = parse_split(j.at("split").get<std::string>());
      if (!split) throw Error("unknown split \"" + j.at("split").get<std::string>() + "\"");
      r.split = *split;
      r.transcript = j.at("transcript").get<std::string>();
      for (const auto& t : j.at("triplets")) {
        Triplet triplet{t.at("head").get<std::string>(), t.at("relation").get<std::string>(),
                        t.at("tail").get<std::string>()};
        validate_triplet(triplet);
        r.triplets.push_back(std::move(triplet));
      }
      if (j.contains("duration")) r.duration = j["duration"].get<double>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw fail(e.what());
    } catch (const Error& e) {
      throw fail(e.what());
    }
  }
  return records;
}

BuildResult build_manifest(std::string name, std::span<const SourceRecord> records,
                           const std::optional<std::filesystem::path>& audio_dir, std::string_view source_tag) {
  BuildResult out;
  Manifest& m = out.manifest;
  m.name = std::move(name);
  std::unordered_set<std::string> ids;
  std::set<std::string> relations;
  for (const auto& r : records) {
    if (!ids.insert(r.id).second) throw Error("duplicate record id \"" + r.id + "\"");
    if (trim(r.transcript).empty()) throw Error("record " + r.id + ": empty transcript");
    RelationInstance inst;
    inst.id = r.id;
    inst.split = r.split;
    inst.transcript = r.transcript;
    inst.triplets = r.triplets;
    inst.duration = r.duration;
    inst.source = std::string(source_tag);
    if (audio_dir) {
      const auto wav = *audio_dir / (r.id + ".wav");
      inst.audio = wav.generic_string();
      if (!std::filesystem::exists(wav)) out.warnings.push_back("missing audio file " + wav.generic_string());
    }
    for (const auto& t : r.triplets) relations.insert(t.relation);
    m.instances.push_back(std::move(inst));
  }
  m.relations.assign(relations.begin(), relations.end());
  m.meta["lineage"] = "built from " + std::to_string(records.size()) + " source records";
  if (audio_dir) m.meta["audio_dir"] = audio_dir->generic_string();
  validate_manifest(m);
  return out;
}

std::map<std::string, std::size_t> relation_instance_counts(const Manifest& m, std::optional<Split> split) {
  std::map<std::string, std::size_t> counts;
  for (const auto& inst : m.instances) {
    if (split && inst.split != *split) continue;
    std::set<std::string_view> seen;
    for (const auto& t : inst.triplets)
      if (seen.insert(t.relation).second) ++counts[t.relation];
  }
  return counts;
}

std::vector<std::string> top_k_relations(const Manifest& m, std::size_t k, CountScope scope) {
  if (k == 0) throw Error("k must be positive");
  const auto counts =
      relation_instance_counts(m, scope == CountScope::train_only ? std::optional(Split::train) : std::nullopt);
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& r : m.relations) {
    if (r == kNoRelation) continue;
    const auto it = counts.find(r);
    ranked.emplace_back(it == counts.end() ? 0 : it->second, r);
  }
  if (ranked.size() < k)
    throw Error("manifest has " + std::to_string(ranked.size()) + " eligible relations, fewer than k = " +
                std::to_string(k));
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(ranked[i].second);
  return out;
}

Manifest subset_top_k_relations(const Manifest& m, std::size_t k, CountScope scope) {
  const auto top = top_k_relations(m, k, scope);
  const std::set<std::string> kept(top.begin(), top.end());
  Manifest out;
  out.name = m.name;
  out.meta = m.meta;
  for (const auto& r : m.relations)
    if (kept.contains(r)) out.relations.push_back(r);
  for (const auto& inst : m.instances) {
    if (inst.triplets.empty()) continue;
    const bool inside = std::all_of(inst.triplets.begin(), inst.triplets.end(),
                                    [&](const Triplet& t) { return kept.contains(t.relation); });
    if (inside) out.instances.push_back(inst);
  }
  return out;
}

DatasetStats compute_stats(const Manifest& m) {
  DatasetStats s;
  std::size_t tokens = 0;
  double seconds = 0.0;
  std::size_t timed = 0;
  for (const auto& inst : m.instances) {
    ++s.instances[inst.split];
    s.triplets[inst.split] += inst.triplets.size();
    tokens += word_spans(inst.transcript).size();
    if (inst.duration) {
      seconds += *inst.duration;
      ++timed;
    }
  }
  if (!m.instances.empty()) s.avg_tokens = static_cast<double>(tokens) / static_cast<double>(m.instances.size());
  if (timed > 0) s.avg_audio_seconds = seconds / static_cast<double>(timed);
  s.relation_counts = relation_instance_counts(m);
  return s;
}

namespace {

ordered_json split_json(const SplitCounts& c) {
  return {{"train", c.train}, {"dev", c.dev}, {"test", c.test}, {"total", c.total()}};
}

std::string with_commas(std::size_t n) {
  std::string digits = std::to_string(n);
  for (int i = static_cast<int>(digits.size()) - 3; i > 0; i -= 3) digits.insert(static_cast<std::size_t>(i), ",");
  return digits;
}

}  // namespace

std::string stats_to_json(const DatasetStats& s, const Manifest& m) {
  ordered_json j;
  j["name"] = m.name;
  j["relations"] = m.relations.size();
  j["instances"] = split_json(s.instances);
  j["triplets"] = split_json(s.triplets);
  j["avg_tokens"] = s.avg_tokens;
  if (s.avg_audio_seconds) j["avg_audio_seconds"] = *s.avg_audio_seconds;
  auto counts = ordered_json::object();
  for (const auto& [r, c] : s.relation_counts) counts[r] = c;
  j["relation_counts"] = std::move(counts);
  return j.dump();
}

std::string format_stats_table(const DatasetStats& s, const Manifest& m) {
  std::ostringstream out;
  const auto triple = [](const SplitCounts& c) {
    return with_commas(c.train) + " || " + with_commas(c.dev) + " || " + with_commas(c.test);
  };
  out << "dataset:     " << m.name << '\n';
  out << "relations:   " << m.relations.size() << '\n';
  out << "instances:   " << triple(s.instances) << "  (train || dev || test)\n";
  out << "triplets:    " << triple(s.triplets) << "  (train || dev || test)\n";
  out << std::fixed << std::setprecision(1);
  out << "avg tokens:  " << s.avg_tokens << '\n';
  out << "avg audio:   ";
  if (s.avg_audio_seconds)
    out << *s.avg_audio_seconds << " s\n";
  else
    out << "n/a\n";
  return out.str();
}

Manifest plan_upsampling(const Manifest& m, std::span<const std::string> voices) {
  std::unordered_set<std::string> seen;
  for (const auto& v : voices) {
    if (v.empty()) throw Error("voice id is empty");
    if (v.find(kVoiceDelimiter) != std::string::npos) throw Error("voice id \"" + v + "\" contains '#'");
    if (!seen.insert(v).second) throw Error("duplicate voice id \"" + v + "\"");
  }
  if (voices.empty()) return m;

  Manifest out = m;
  std::unordered_set<std::string> ids;
  for (const auto& inst : m.instances) ids.insert(inst.id);
  for (const auto& inst : m.instances) {
    if (inst.split != Split::train) continue;
    for (const auto& v : voices) {
      RelationInstance copy = inst;
      copy.id = inst.id + kVoiceDelimiter + v;
      if (!ids.insert(copy.id).second) throw Error("upsampled id \"" + copy.id + "\" already exists");
      copy.voice = v;
      copy.source = std::string(source::tts);
      copy.hypothesis.reset();
      copy.duration.reset();
      if (inst.audio) {
        const std::filesystem::path original(*inst.audio);
        copy.audio = (original.parent_path() / v / original.filename()).generic_string();
      } else {
        copy.audio = (std::filesystem::path(v) / (inst.id + ".wav")).generic_string();
      }
      out.instances.push_back(std::move(copy));
    }
  }
  std::string joined;
  for (const auto& v : voices) joined += (joined.empty() ? "" : ",") + v;
  out.meta["voices"] = joined;
  return out;
}

namespace {

Manifest human_subset_from(const Manifest& m, std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  Manifest out;
  out.name = m.name + "-human";
  out.relations = m.relations;
  out.meta = m.meta;
  for (std::size_t i : chosen) {
    RelationInstance inst = m.instances[i];
    inst.source = std::string(source::human_pending);
    out.instances.push_back(std::move(inst));
  }
  return out;
}

std::vector<std::size_t> test_indices(const Manifest& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.instances.size(); ++i)
    if (m.instances[i].split == Split::test) out.push_back(i);
  return out;
}

}  // namespace

Manifest select_human_subset(const Manifest& m, std::size_t n, std::uint64_t seed) {
  const auto test = test_indices(m);
  if (test.size() < n)
    throw Error("test split has " + std::to_string(test.size()) + " instances, fewer than " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  for (std::size_t k : sample_indices(test.size(), n, rng)) chosen.push_back(test[k]);
  Manifest out = human_subset_from(m, std::move(chosen));
  out.meta["human_subset"] = "uniform n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  return out;
}

Manifest select_human_subset_stratified(const Manifest& m, std::size_t per_relation, std::uint64_t seed) {
  const auto test = test_indices(m);
  std::vector<bool> taken(m.instances.size(), false);
  std::vector<std::size_t> chosen;
  for (const auto& r : m.relations) {
    if (r == kNoRelation) continue;
    std::vector<std::size_t> pool;
    for (std::size_t i : test) {
      if (taken[i]) continue;
      const auto& ts = m.instances[i].triplets;
      if (std::any_of(ts.begin(), ts.end(), [&](const Triplet& t) { return t.relation == r; })) pool.push_back(i);
    }
    if (pool.size() < per_relation)
      throw Error("relation \"" + r + "\" has " + std::to_string(pool.size()) +
                  " unselected test instances, fewer than the quota " + std::to_string(per_relation));
    std::mt19937_64 rng(splitmix64(seed ^ fnv1a64(r)));
    for (std::size_t k : sample_indices(pool.size(), per_relation, rng)) {
      taken[pool[k]] = true;
      chosen.push_back(pool[k]);
    }
  }
  Manifest out = human_subset_from(m, std::move(chosen));
  out.meta["human_subset"] =
      "stratified per_relation=" + std::to_string(per_relation) + " seed=" + std::to_string(seed);
  return out;
}

}  // namespace speechre
