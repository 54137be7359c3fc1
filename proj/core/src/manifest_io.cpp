#include "speechre/manifest_io.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "speechre/error.hpp"

namespace speechre {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kHeaderKeys = {"kind", "name", "relations", "meta"};
const std::set<std::string> kInstanceKeys = {"kind",  "id",       "split",  "transcript", "hypothesis", "audio",
                                             "voice", "duration", "source", "triplets",   "provenance"};
const std::set<std::string> kTripletKeys = {"head", "relation", "tail"};

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, std::string_view what) {
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) throw Error(std::string(what) + " has unknown field \"" + key + "\"");
}

std::string get_string(const json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(std::string(what) + " lacks \"" + key + "\"");
  if (!it->is_string()) throw Error(std::string(what) + " field \"" + key + "\" must be a string");
  return it->get<std::string>();
}

std::optional<std::string> get_optional_string(const json& j, const char* key, std::string_view what) {
  if (!j.contains(key)) return std::nullopt;
  return get_string(j, key, what);
}

std::vector<std::string> get_string_list(const json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) return {};
  if (!it->is_array()) throw Error(std::string(what) + " field \"" + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(std::string(what) + " field \"" + key + "\" must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json parse_json_object(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("expected a JSON object");
  return j;
}

ordered_json triplet_json(const Triplet& t) {
  return {{"head", t.head}, {"relation", t.relation}, {"tail", t.tail}};
}

ordered_json instance_json(const RelationInstance& inst) {
  ordered_json j;
  j["kind"] = "instance";
  j["id"] = inst.id;
  j["split"] = to_string(inst.split);
  j["transcript"] = inst.transcript;
  if (inst.hypothesis) j["hypothesis"] = *inst.hypothesis;
  if (inst.audio) j["audio"] = *inst.audio;
  if (inst.voice) j["voice"] = *inst.voice;
  if (inst.duration) j["duration"] = *inst.duration;
  j["source"] = inst.source;
  auto triplets = ordered_json::array();
  for (const auto& t : inst.triplets) triplets.push_back(triplet_json(t));
  j["triplets"] = std::move(triplets);
  if (!inst.provenance.empty()) j["provenance"] = inst.provenance;
  return j;
}

RelationInstance instance_from_object(const json& j) {
  reject_unknown_keys(j, kInstanceKeys, "instance");
  if (j.contains("kind") && j["kind"] != "instance") throw Error("expected kind \"instance\"");
  RelationInstance inst;
  inst.id = get_string(j, "id", "instance");
  const std::string what = "instance " + inst.id;
  const std::string split = get_string(j, "split", what);
  const auto parsed = parse_split(split);
  if (!parsed) throw Error(what + ": unknown split \"" + split + "\"");
  inst.split = *parsed;
  inst.transcript = get_string(j, "transcript", what);
  inst.hypothesis = get_optional_string(j, "hypothesis", what);
  inst.audio = get_optional_string(j, "audio", what);
  inst.voice = get_optional_string(j, "voice", what);
  if (j.contains("duration")) {
    if (!j["duration"].is_number()) throw Error(what + ": \"duration\" must be a number");
    inst.duration = j["duration"].get<double>();
  }
  inst.source = j.contains("source") ? get_string(j, "source", what) : std::string(source::gold);
  const auto triplets = j.find("triplets");
  if (triplets == j.end() || !triplets->is_array()) throw Error(what + ": \"triplets\" must be an array");
  for (const auto& t : *triplets) {
    if (!t.is_object()) throw Error(what + ": triplet must be an object");
    reject_unknown_keys(t, kTripletKeys, what + " triplet");
    inst.triplets.push_back({get_string(t, "head", what), get_string(t, "relation", what), get_string(t, "tail", what)});
  }
  inst.provenance = get_string_list(j, "provenance", what);
  validate_instance(inst);
  return inst;
}

}  // namespace

std::string instance_to_json(const RelationInstance& inst) { return instance_json(inst).dump(); }

RelationInstance instance_from_json(std::string_view line) { return instance_from_object(parse_json_object(line)); }

std::string triplets_to_json(const std::vector<Triplet>& triplets) {
  auto arr = ordered_json::array();
  for (const auto& t : triplets) arr.push_back(triplet_json(t));
  return arr.dump();
}

Manifest parse_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> inventory;
  std::unordered_set<std::string> ids;
  const auto at = [&](const std::string& msg) { return Error("line " + std::to_string(line_no) + ": " + msg); };

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) throw at("byte order mark is not allowed");
    if (line.empty()) throw at("empty line");
    try {
      const json j = parse_json_object(line);
      if (line_no == 1) {
        if (!j.contains("kind") || j["kind"] != "manifest") throw Error("first line must be the manifest header");
        reject_unknown_keys(j, kHeaderKeys, "header");
        m.name = get_string(j, "name", "header");
        m.relations = get_string_list(j, "relations", "header");
        for (const auto& r : m.relations)
          if (!inventory.insert(r).second) throw Error("relation \"" + r + "\" listed twice");
        if (j.contains("meta")) {
          if (!j["meta"].is_object()) throw Error("header \"meta\" must be an object");
          for (const auto& [k, v] : j["meta"].items()) {
            if (!v.is_string()) throw Error("meta value for \"" + k + "\" must be a string");
            m.meta[k] = v.get<std::string>();
          }
        }
        continue;
      }
      RelationInstance inst = instance_from_object(j);
      if (!ids.insert(inst.id).second) throw Error("duplicate instance id \"" + inst.id + "\"");
      for (const auto& t : inst.triplets)
        if (!inventory.contains(t.relation))
          throw Error("instance " + inst.id + ": unknown relation label \"" + t.relation + "\"");
      m.instances.push_back(std::move(inst));
    } catch (const Error& e) {
      throw at(e.what());
    }
  }
  if (line_no == 0) throw Error("manifest is empty (missing header line)");
  validate_manifest(m);
  return m;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open manifest " + path.string());
  try {
    return parse_manifest(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_manifest(const Manifest& m, std::ostream& out) {
  validate_manifest(m);
  ordered_json header;
  header["kind"] = "manifest";
  header["name"] = m.name;
  header["relations"] = m.relations;
  auto meta = ordered_json::object();
  for (const auto& [k, v] : m.meta) meta[k] = v;
  header["meta"] = std::move(meta);
  out << header.dump() << '\n';
  for (const auto& inst : m.instances) out << instance_json(inst).dump() << '\n';
}

std::string to_jsonl(const Manifest& m) {
  std::ostringstream out;
  write_manifest(m, out);
  return out.str();
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) { write_file_atomic(path, to_jsonl(m)); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot write " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace speechre
