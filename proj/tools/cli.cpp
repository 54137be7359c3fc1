#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "speechre/adaptor.hpp"
#include "speechre/align.hpp"
#include "speechre/augment.hpp"
#include "speechre/corpus.hpp"
#include "speechre/error.hpp"
#include "speechre/manifest_io.hpp"
#include "speechre/scorer.hpp"
#include "speechre/text.hpp"
#include "speechre/triplet_codec.hpp"

namespace speechre::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 0;
  bool json = false;
  std::string policy = "strict";
};

struct Io {
  std::ostringstream out;
  std::ostringstream err;
};

NormalizationPolicy policy_from(const Globals& g) {
  return g.policy == "relaxed" ? NormalizationPolicy::relaxed() : NormalizationPolicy::strict();
}

std::optional<Split> split_option(const std::string& s) {
  if (s == "all") return std::nullopt;
  return parse_split(s);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Every JSONL side file below uses the same line discipline: one object per line.
template <typename F>
void for_each_json_line(const std::string& path, F&& f) {
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      if (!j.is_object()) throw Error("expected a JSON object");
      f(j);
    } catch (const json::exception& e) {
      throw Error(fmt::format("{}: line {}: {}", path, line_no, e.what()));
    } catch (const Error& e) {
      throw Error(fmt::format("{}: line {}: {}", path, line_no, e.what()));
    }
  }
}

std::string split_summary(const Manifest& m) {
  SplitCounts c;
  for (const auto& inst : m.instances) ++c[inst.split];
  return fmt::format("{} instances (train {} / dev {} / test {}), {} relations", m.instances.size(), c.train, c.dev,
                     c.test, m.relations.size());
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string source, name, out, audio_dir, source_tag = "gold";
};

int cmd_build(const BuildArgs& a, const Globals& g, Io& io) {
  const auto records = read_source_records(a.source);
  std::optional<std::filesystem::path> audio;
  if (!a.audio_dir.empty()) audio = a.audio_dir;
  auto built = build_manifest(a.name, records, audio, a.source_tag);
  write_manifest(built.manifest, a.out);
  for (const auto& w : built.warnings) io.err << "warning: " << w << '\n';
  if (g.json) {
    ordered_json j{{"name", built.manifest.name},
                   {"instances", built.manifest.instances.size()},
                   {"relations", built.manifest.relations.size()},
                   {"warnings", built.warnings}};
    io.out << j.dump() << '\n';
  } else {
    io.out << fmt::format("built {}: {}\n", built.manifest.name, split_summary(built.manifest));
  }
  return 0;
}

struct SubsetArgs {
  std::string manifest, out, scope = "all";
  std::size_t k = 10;
};

int cmd_subset(const SubsetArgs& a, const Globals& g, Io& io) {
  const Manifest m = read_manifest(a.manifest);
  const CountScope scope = a.scope == "train" ? CountScope::train_only : CountScope::all_splits;
  Manifest sub = subset_top_k_relations(m, a.k, scope);
  sub.meta["top_k_relations"] = fmt::format("{} ({} counts)", a.k, a.scope);
  write_manifest(sub, a.out);
  if (g.json) {
    ordered_json j{{"relations", sub.relations},
                   {"instances", sub.instances.size()},
                   {"removed", m.instances.size() - sub.instances.size()}};
    io.out << j.dump() << '\n';
  } else {
    io.out << fmt::format("kept relations: {}\n", fmt::join(sub.relations, ", "));
    io.out << fmt::format("{}; removed {}\n", split_summary(sub), m.instances.size() - sub.instances.size());
  }
  return 0;
}

int cmd_stats(const std::string& manifest, const Globals& g, Io& io) {
  const Manifest m = read_manifest(manifest);
  const DatasetStats s = compute_stats(m);
  io.out << (g.json ? stats_to_json(s, m) + "\n" : format_stats_table(s, m));
  return 0;
}

struct UpsampleArgs {
  std::string manifest, out;
  std::vector<std::string> voices;
};

int cmd_upsample(const UpsampleArgs& a, const Globals& g, Io& io) {
  const Manifest m = read_manifest(a.manifest);
  const Manifest up = plan_upsampling(m, a.voices);
  write_manifest(up, a.out);
  const std::size_t added = up.instances.size() - m.instances.size();
  if (g.json)
    io.out << ordered_json{{"voices", a.voices}, {"added", added}, {"instances", up.instances.size()}}.dump() << '\n';
  else
    io.out << fmt::format("added {} tts instances over {} voices; {}\n", added, a.voices.size(), split_summary(up));
  return 0;
}

struct HumanArgs {
  std::string manifest, out;
  std::size_t n = 0;
  std::size_t per_relation = 0;
};

int cmd_human(const HumanArgs& a, const Globals& g, Io& io) {
  const Manifest m = read_manifest(a.manifest);
  const Manifest sub = a.per_relation > 0 ? select_human_subset_stratified(m, a.per_relation, g.seed)
                                          : select_human_subset(m, a.n, g.seed);
  write_manifest(sub, a.out);
  std::vector<std::string> ids;
  for (const auto& inst : sub.instances) ids.push_back(inst.id);
  if (g.json)
    io.out << ordered_json{{"seed", g.seed}, {"selected", ids.size()}, {"ids", ids}}.dump() << '\n';
  else
    io.out << fmt::format("selected {} test instances (seed {})\n", ids.size(), g.seed);
  return 0;
}

struct RelabelArgs {
  std::string manifest, out, hypotheses, split = "train";
  int threshold = kDefaultRelabelThreshold;
};

int cmd_relabel(const RelabelArgs& a, const Globals& g, Io& io) {
  Manifest m = read_manifest(a.manifest);
  std::map<std::string, std::string> hyps;
  if (!a.hypotheses.empty()) {
    for_each_json_line(a.hypotheses, [&](const json& j) {
      const auto id = j.at("id").get<std::string>();
      if (!hyps.emplace(id, j.at("hypothesis").get<std::string>()).second)
        throw Error("duplicate hypothesis id \"" + id + "\"");
    });
  }
  const auto split = split_option(a.split);
  std::size_t relabeled = 0, missing = 0, dropped = 0;
  std::vector<std::string> removed;
  Manifest out = m;
  out.instances.clear();
  for (auto& inst : m.instances) {
    if ((split && inst.split != *split) || inst.triplets.empty()) {
      out.instances.push_back(std::move(inst));
      continue;
    }
    std::optional<std::string> hyp = inst.hypothesis;
    if (const auto it = hyps.find(inst.id); it != hyps.end()) hyp = it->second;
    if (!hyp) {
      ++missing;
      out.instances.push_back(std::move(inst));
      continue;
    }
    RelationInstance r = relabel_instance(inst, *hyp, a.threshold);
    r.hypothesis = *hyp;
    ++relabeled;
    dropped += inst.triplets.size() - r.triplets.size();
    if (r.triplets.empty() && !r.is_pseudo()) {
      removed.push_back(r.id);
      continue;
    }
    out.instances.push_back(std::move(r));
  }
  out.meta["relabel"] = fmt::format("split={} threshold={}", a.split, a.threshold);
  write_manifest(out, a.out);
  if (g.json) {
    io.out << ordered_json{{"relabeled", relabeled},
                           {"without_hypothesis", missing},
                           {"dropped_triplets", dropped},
                           {"removed_instances", removed}}
                  .dump()
           << '\n';
  } else {
    io.out << fmt::format("relabeled {} instances; {} without hypothesis; dropped {} triplets; removed {} instances\n",
                          relabeled, missing, dropped, removed.size());
  }
  return 0;
}

struct FilterArgs {
  std::string pseudo, gold, out, drops, pronouns, factor;
};

int cmd_filter(const FilterArgs& a, const Globals& g, Io& io) {
  const Manifest pseudo = read_manifest(a.pseudo);
  const Manifest gold = read_manifest(a.gold);
  const PronounSet pronouns = a.pronouns.empty() ? default_pronouns() : load_pronouns(a.pronouns);
  const std::set<std::string> allowed(gold.relations.begin(), gold.relations.end());
  FilterResult result = filter_pseudo(pseudo.instances, allowed, pronouns);

  std::vector<RelationInstance> kept = std::move(result.kept);
  const std::size_t clean = kept.size();
  if (!a.factor.empty())
    kept = sample_per_relation(kept, relation_instance_counts(gold, Split::train), parse_ratio(a.factor), g.seed);

  Manifest out;
  out.name = pseudo.name;
  out.relations = gold.relations;
  out.meta = pseudo.meta;
  out.meta["filter"] = fmt::format("pronouns={} allowed_from={}",
                                   a.pronouns.empty() ? std::string(default_pronoun_lexicon_version()) : a.pronouns,
                                   gold.name);
  if (!a.factor.empty()) out.meta["sample"] = fmt::format("factor={} seed={}", a.factor, g.seed);
  out.instances = std::move(kept);
  write_manifest(out, a.out);

  std::string drops;
  std::map<std::string, std::size_t> by_reason;
  for (const auto& d : result.dropped) {
    drops += drop_record_to_json(d) + "\n";
    ++by_reason[std::string(to_string(d.reason))];
  }
  write_file_atomic(a.drops, drops);

  if (g.json) {
    io.out << ordered_json{{"candidates", pseudo.instances.size()},
                           {"clean", clean},
                           {"written", out.instances.size()},
                           {"dropped", by_reason}}
                  .dump()
           << '\n';
  } else {
    io.out << fmt::format("candidates {}, clean {}, written {}\n", pseudo.instances.size(), clean,
                          out.instances.size());
    for (const auto& [reason, n] : by_reason) io.out << fmt::format("  dropped {:<17}{}\n", reason, n);
  }
  return 0;
}

struct EvaluateArgs {
  std::string gold, pred, split = "all";
};

int cmd_evaluate(const EvaluateArgs& a, const Globals& g, Io& io) {
  const Manifest gold = read_manifest(a.gold);
  Predictions pred;
  std::size_t warnings = 0;
  for_each_json_line(a.pred, [&](const json& j) {
    if (j.contains("kind") && j["kind"] == "manifest") return;
    const auto id = j.at("id").get<std::string>();
    std::vector<Triplet> triplets;
    if (j.contains("generation")) {
      auto parsed = parse_lenient(j["generation"].get<std::string>());
      warnings += parsed.warnings.size();
      triplets = std::move(parsed.triplets);
    } else {
      for (const auto& t : j.at("triplets")) {
        Triplet tr{t.at("head").get<std::string>(), t.at("relation").get<std::string>(),
                   t.at("tail").get<std::string>()};
        validate_triplet(tr);
        triplets.push_back(std::move(tr));
      }
    }
    if (!pred.emplace(id, std::move(triplets)).second) throw Error("duplicate prediction id \"" + id + "\"");
  });
  const EvalReport report = evaluate_corpus(gold, pred, policy_from(g), split_option(a.split));
  if (warnings > 0) io.err << fmt::format("{} generation parse warnings (see triplet-lint)\n", warnings);
  io.out << (g.json ? report_to_json(report) + "\n" : format_report_table(report));
  return 0;
}

struct LintArgs {
  std::string file;
  bool strict = false;
};

int cmd_lint(const LintArgs& a, const Globals& g, Io& io) {
  const auto lines = read_lines(a.file);
  std::size_t triplets = 0, warnings = 0, strict_errors = 0;
  auto report = ordered_json::array();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto parsed = parse_lenient(lines[i]);
    triplets += parsed.triplets.size();
    warnings += parsed.warnings.size();
    std::optional<std::string> strict_error;
    if (a.strict) {
      try {
        parse_strict(lines[i]);
      } catch (const ParseError& e) {
        strict_error = e.what();
        ++strict_errors;
      }
    }
    if (g.json) {
      ordered_json entry{{"line", i + 1}, {"triplets", json::parse(triplets_to_json(parsed.triplets))}};
      auto ws = ordered_json::array();
      for (const auto& w : parsed.warnings)
        ws.push_back({{"kind", to_string(w.kind)}, {"position", w.position}, {"detail", w.detail}});
      entry["warnings"] = std::move(ws);
      if (strict_error) entry["strict_error"] = *strict_error;
      report.push_back(std::move(entry));
      continue;
    }
    for (const auto& w : parsed.warnings)
      io.out << fmt::format("line {}: {} at {}: {}\n", i + 1, to_string(w.kind), w.position, w.detail);
    if (strict_error) io.out << fmt::format("line {}: strict: {}\n", i + 1, *strict_error);
  }
  if (g.json) {
    io.out << ordered_json{{"lines", lines.size()}, {"triplets", triplets}, {"warnings", warnings}, {"report", report}}
                  .dump()
           << '\n';
  } else {
    io.out << fmt::format("{} lines, {} triplets recovered, {} warnings", lines.size(), triplets, warnings);
    if (a.strict) io.out << fmt::format(", {} strict errors", strict_errors);
    io.out << '\n';
  }
  return a.strict && strict_errors > 0 ? 1 : 0;
}

struct WerArgs {
  std::string ref, hyp;
};

int cmd_wer(const WerArgs& a, const Globals& g, Io& io) {
  const auto refs = read_lines(a.ref);
  const auto hyps = read_lines(a.hyp);
  if (refs.size() != hyps.size())
    throw Error(fmt::format("reference has {} lines but hypothesis has {}", refs.size(), hyps.size()));
  WordErrors total;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    try {
      total += word_errors(split_words(refs[i]), split_words(hyps[i]));
    } catch (const Error& e) {
      throw Error(fmt::format("line {}: {}", i + 1, e.what()));
    }
  }
  if (total.reference_words == 0) throw Error("no reference words");
  const Ratio rate = total.rate();
  if (g.json) {
    io.out << ordered_json{{"wer", rate.value()},
                           {"errors", total.errors()},
                           {"reference_words", total.reference_words},
                           {"insertions", total.insertions},
                           {"deletions", total.deletions},
                           {"substitutions", total.substitutions}}
                  .dump()
           << '\n';
  } else {
    io.out << fmt::format("%WER {:.2f} [ {} / {}, {} ins, {} del, {} sub ]\n", 100.0 * rate.value(), total.errors(),
                          total.reference_words, total.insertions, total.deletions, total.substitutions);
  }
  return 0;
}

struct AdaptorArgs {
  std::int64_t length = 0;
  std::string spec = "3,2,1;3,2,1;3,2,1";
  std::uint64_t total_params = 0;
  std::uint64_t trainable_params = 0;
};

int cmd_adaptor(const AdaptorArgs& a, const Globals& g, Io& io) {
  const AdaptorSpec spec = AdaptorSpec::parse(a.spec);
  const auto lengths = layer_lengths(a.length, spec);
  std::optional<Ratio> fraction;
  if (a.total_params > 0) fraction = trainable_fraction({a.total_params, a.trainable_params});
  if (g.json) {
    ordered_json j{{"input", a.length},
                   {"layers", lengths},
                   {"output", lengths.back()},
                   {"total_stride", spec.total_stride()}};
    if (fraction) j["trainable_fraction"] = fraction->value();
    io.out << j.dump() << '\n';
    return 0;
  }
  io.out << fmt::format("input {}\n", a.length);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const auto& l = spec.layers()[i];
    io.out << fmt::format("layer {} (k={}, s={}, p={}): {}\n", i, l.kernel, l.stride, l.padding, lengths[i]);
  }
  io.out << fmt::format("reduction {:.3f} (stride product {})\n",
                        static_cast<double>(a.length) / static_cast<double>(lengths.back()), spec.total_stride());
  if (fraction) io.out << fmt::format("trainable fraction {} = {:.4f}\n", to_string(*fraction), fraction->value());
  return 0;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw CLI::ValidationError(std::string(kSeedEnv), "must be an unsigned integer");
  return seed;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  Io io;
  Globals g;
  CLI::App app{"Speech relation extraction corpus and evaluation toolkit", "speechre"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Seed for sampling (default: $" + std::string(kSeedEnv) + " or 0)");
  app.add_flag("--json", g.json, "Machine-readable JSON report on stdout");
  app.add_option("--policy", g.policy, "Entity matching policy")->check(CLI::IsMember({"strict", "relaxed"}));

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Build a manifest from a TextRE JSONL export");
  c_build->add_option("--source", build.source, "Source JSONL")->required()->check(CLI::ExistingFile);
  c_build->add_option("--name", build.name, "Dataset name")->required();
  c_build->add_option("--out", build.out, "Output manifest")->required();
  c_build->add_option("--audio-dir", build.audio_dir, "Directory holding <id>.wav files");
  c_build->add_option("--source-tag", build.source_tag, "Provenance tag for every instance");

  SubsetArgs subset;
  auto* c_subset = app.add_subcommand("subset", "Keep the k most frequent relations");
  c_subset->add_option("--manifest", subset.manifest)->required()->check(CLI::ExistingFile);
  c_subset->add_option("--k", subset.k, "Number of relations")->required()->check(CLI::PositiveNumber);
  c_subset->add_option("--out", subset.out)->required();
  c_subset->add_option("--count-scope", subset.scope, "Splits used for relation counts")
      ->check(CLI::IsMember({"all", "train"}));

  std::string stats_manifest;
  auto* c_stats = app.add_subcommand("stats", "Dataset statistics");
  c_stats->add_option("--manifest", stats_manifest)->required()->check(CLI::ExistingFile);

  UpsampleArgs upsample;
  auto* c_up = app.add_subcommand("upsample-plan", "Plan multi-voice TTS copies of the train split");
  c_up->add_option("--manifest", upsample.manifest)->required()->check(CLI::ExistingFile);
  c_up->add_option("--voices", upsample.voices, "Comma-separated voice ids")->required()->delimiter(',');
  c_up->add_option("--out", upsample.out)->required();

  HumanArgs human;
  auto* c_human = app.add_subcommand("human-subset", "Select test instances for human recording");
  c_human->add_option("--manifest", human.manifest)->required()->check(CLI::ExistingFile);
  auto* o_n = c_human->add_option("--n", human.n, "Uniform sample size");
  auto* o_per = c_human->add_option("--per-relation", human.per_relation, "Stratified quota per relation")
                    ->check(CLI::PositiveNumber);
  o_n->excludes(o_per);
  c_human->add_option("--out", human.out)->required();

  RelabelArgs relabel;
  auto* c_relabel = app.add_subcommand("relabel", "Align gold entities to ASR hypotheses");
  c_relabel->add_option("--manifest", relabel.manifest)->required()->check(CLI::ExistingFile);
  c_relabel->add_option("--hypotheses", relabel.hypotheses, "JSONL of {\"id\", \"hypothesis\"}")
      ->check(CLI::ExistingFile);
  c_relabel->add_option("--threshold", relabel.threshold, "Minimum similarity (0-100)")->check(CLI::Range(0, 100));
  c_relabel->add_option("--split", relabel.split)->check(CLI::IsMember({"train", "dev", "test", "all"}));
  c_relabel->add_option("--out", relabel.out)->required();

  FilterArgs filter;
  auto* c_filter = app.add_subcommand("filter-pseudo", "Filter pseudo-labelled instances");
  c_filter->add_option("--pseudo", filter.pseudo)->required()->check(CLI::ExistingFile);
  c_filter->add_option("--gold", filter.gold, "Gold manifest (relation inventory, train counts)")
      ->required()
      ->check(CLI::ExistingFile);
  c_filter->add_option("--out", filter.out)->required();
  c_filter->add_option("--drops", filter.drops, "Drop report JSONL")->required();
  c_filter->add_option("--pronouns", filter.pronouns, "Pronoun lexicon file")->check(CLI::ExistingFile);
  c_filter->add_option("--sample-factor", filter.factor, "Per-relation sampling factor, e.g. 1.8");

  EvaluateArgs evaluate;
  auto* c_eval = app.add_subcommand("evaluate", "Entity / relation / triplet micro P, R, F1");
  c_eval->add_option("--gold", evaluate.gold)->required()->check(CLI::ExistingFile);
  c_eval->add_option("--pred", evaluate.pred, "JSONL of {\"id\", \"generation\"} or {\"id\", \"triplets\"}")
      ->required()
      ->check(CLI::ExistingFile);
  c_eval->add_option("--split", evaluate.split)->check(CLI::IsMember({"train", "dev", "test", "all"}));

  LintArgs lint;
  auto* c_lint = app.add_subcommand("triplet-lint", "Parse raw generations, one per line");
  c_lint->add_option("--file", lint.file)->required()->check(CLI::ExistingFile);
  c_lint->add_flag("--strict", lint.strict, "Also report strict-format errors (exit 1 if any)");

  WerArgs wer_args;
  auto* c_wer = app.add_subcommand("wer", "Word error rate of line-aligned files");
  c_wer->add_option("--ref", wer_args.ref)->required()->check(CLI::ExistingFile);
  c_wer->add_option("--hyp", wer_args.hyp)->required()->check(CLI::ExistingFile);

  AdaptorArgs adaptor;
  auto* c_adaptor = app.add_subcommand("adaptor-len", "Length adaptor output lengths");
  c_adaptor->add_option("--length", adaptor.length)->required()->check(CLI::PositiveNumber);
  c_adaptor->add_option("--spec", adaptor.spec, "k,s,p[;k,s,p...]");
  c_adaptor->add_option("--total-params", adaptor.total_params);
  c_adaptor->add_option("--trainable-params", adaptor.trainable_params);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("speechre");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    g.seed = default_seed();
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (c_human->parsed() && o_n->count() == 0 && o_per->count() == 0)
      throw CLI::RequiredError("--n or --per-relation");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    if (code != 0) io.err << '\n' << app.help();
    return {code == 0 ? 0 : 2, io.out.str(), io.err.str()};
  }

  int code = 0;
  try {
    if (c_build->parsed()) code = cmd_build(build, g, io);
    else if (c_subset->parsed()) code = cmd_subset(subset, g, io);
    else if (c_stats->parsed()) code = cmd_stats(stats_manifest, g, io);
    else if (c_up->parsed()) code = cmd_upsample(upsample, g, io);
    else if (c_human->parsed()) code = cmd_human(human, g, io);
    else if (c_relabel->parsed()) code = cmd_relabel(relabel, g, io);
    else if (c_filter->parsed()) code = cmd_filter(filter, g, io);
    else if (c_eval->parsed()) code = cmd_evaluate(evaluate, g, io);
    else if (c_lint->parsed()) code = cmd_lint(lint, g, io);
    else if (c_wer->parsed()) code = cmd_wer(wer_args, g, io);
    else if (c_adaptor->parsed()) code = cmd_adaptor(adaptor, g, io);
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    code = 1;
  }
  return {code, io.out.str(), io.err.str()};
}

}  // namespace speechre::cli
