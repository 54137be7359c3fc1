#include "speechre/scorer.hpp"

#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "speechre/error.hpp"

namespace speechre {

namespace {

using TripletKey = std::tuple<std::string, std::string, std::string>;

const std::vector<Triplet> kNoTriplets;

std::set<std::string> entity_set(const std::vector<Triplet>& ts, NormalizationPolicy p) {
  std::set<std::string> out;
  for (const auto& t : ts) {
    out.insert(normalize_surface(t.head, p));
    out.insert(normalize_surface(t.tail, p));
  }
  return out;
}

std::set<std::string> relation_set(const std::vector<Triplet>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(t.relation);
  return out;
}

std::set<TripletKey> triplet_set(const std::vector<Triplet>& ts, NormalizationPolicy p) {
  std::set<TripletKey> out;
  for (const auto& t : ts) out.emplace(normalize_surface(t.head, p), t.relation, normalize_surface(t.tail, p));
  return out;
}

template <typename Set>
FacetScore count(const Set& gold, const Set& pred) {
  FacetScore s;
  s.gold_total = gold.size();
  s.pred_total = pred.size();
  auto g = gold.begin();
  auto q = pred.begin();
  while (g != gold.end() && q != pred.end()) {
    if (*g < *q) {
      ++g;
    } else if (*q < *g) {
      ++q;
    } else {
      ++s.tp;
      ++g;
      ++q;
    }
  }
  return s;
}

const std::vector<Triplet>& predicted_for(const Predictions& pred, const std::string& id) {
  const auto it = pred.find(id);
  return it == pred.end() ? kNoTriplets : it->second;
}

void check_ids(std::span<const RelationInstance> gold, const Predictions& pred) {
  std::unordered_map<std::string_view, bool> ids;
  for (const auto& inst : gold) ids.emplace(inst.id, true);
  for (const auto& [id, _] : pred)
    if (!ids.contains(id)) throw Error("prediction id \"" + id + "\" is not in the gold set");
}

template <typename PerInstance>
FacetScore accumulate(std::span<const RelationInstance> gold, const Predictions& pred, PerInstance&& f) {
  check_ids(gold, pred);
  FacetScore total;
  for (const auto& inst : gold) total += f(inst.triplets, predicted_for(pred, inst.id));
  return total;
}

nlohmann::ordered_json facet_json(const FacetScore& s) {
  return {{"tp", s.tp},
          {"pred_total", s.pred_total},
          {"gold_total", s.gold_total},
          {"precision", s.precision().value()},
          {"recall", s.recall().value()},
          {"f1", s.f1().value()}};
}

}  // namespace

FacetScore score_entities(std::span<const RelationInstance> gold, const Predictions& pred,
                          NormalizationPolicy policy) {
  return accumulate(gold, pred, [&](const auto& g, const auto& p) {
    return count(entity_set(g, policy), entity_set(p, policy));
  });
}

FacetScore score_relations(std::span<const RelationInstance> gold, const Predictions& pred,
                           NormalizationPolicy) {
  return accumulate(gold, pred, [](const auto& g, const auto& p) { return count(relation_set(g), relation_set(p)); });
}

FacetScore score_triplets(std::span<const RelationInstance> gold, const Predictions& pred,
                          NormalizationPolicy policy) {
  return accumulate(gold, pred, [&](const auto& g, const auto& p) {
    return count(triplet_set(g, policy), triplet_set(p, policy));
  });
}

EvalReport evaluate_corpus(const Manifest& gold, const Predictions& pred, NormalizationPolicy policy,
                           std::optional<Split> split) {
  std::unordered_map<std::string_view, const RelationInstance*> by_id;
  for (const auto& inst : gold.instances) by_id.emplace(inst.id, &inst);
  for (const auto& [id, _] : pred)
    if (!by_id.contains(id)) throw Error("prediction id \"" + id + "\" is not in the gold manifest");

  EvalReport report;
  report.policy = policy;
  const std::set<std::string> inventory(gold.relations.begin(), gold.relations.end());
  for (const auto& r : gold.relations) report.per_relation[r];
  std::set<std::string> unknown;

  for (const auto& inst : gold.instances) {
    if (split && inst.split != *split) continue;
    ++report.n_instances;
    const auto& predicted = predicted_for(pred, inst.id);
    report.entity += count(entity_set(inst.triplets, policy), entity_set(predicted, policy));
    report.relation += count(relation_set(inst.triplets), relation_set(predicted));

    const auto g = triplet_set(inst.triplets, policy);
    const auto p = triplet_set(predicted, policy);
    report.triplet += count(g, p);

    std::map<std::string, std::pair<std::set<TripletKey>, std::set<TripletKey>>> by_relation;
    for (const auto& key : g) by_relation[std::get<1>(key)].first.insert(key);
    for (const auto& key : p) by_relation[std::get<1>(key)].second.insert(key);
    for (const auto& [r, sets] : by_relation) report.per_relation[r] += count(sets.first, sets.second);

    for (const auto& t : predicted) {
      if (inventory.contains(t.relation)) continue;
      unknown.insert(t.relation);
      ++report.unknown_relation_triplets;
    }
  }
  report.unknown_relations.assign(unknown.begin(), unknown.end());
  return report;
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["n_instances"] = r.n_instances;
  j["policy"] = {{"casefold", r.policy.casefold},
                 {"strip_punct", r.policy.strip_punct},
                 {"collapse_ws", r.policy.collapse_ws}};
  j["entity"] = facet_json(r.entity);
  j["relation"] = facet_json(r.relation);
  j["triplet"] = facet_json(r.triplet);
  auto per = nlohmann::ordered_json::object();
  for (const auto& [rel, s] : r.per_relation) per[rel] = facet_json(s);
  j["per_relation"] = std::move(per);
  j["unknown_relations"] = r.unknown_relations;
  j["unknown_relation_triplets"] = r.unknown_relation_triplets;
  return j.dump();
}

std::string format_report_table(const EvalReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  const auto row = [&](std::string_view label, auto get) {
    out << std::left << std::setw(10) << label << std::right << std::setw(10) << get(r.entity)
        << std::setw(10) << get(r.relation) << std::setw(10) << get(r.triplet) << '\n';
  };
  out << std::left << std::setw(10) << "" << std::right << std::setw(10) << "Entity" << std::setw(10)
      << "Relation" << std::setw(10) << "Triplet" << '\n';
  row("Precision", [](const FacetScore& s) { return s.precision().value(); });
  row("Recall", [](const FacetScore& s) { return s.recall().value(); });
  row("F1", [](const FacetScore& s) { return s.f1().value(); });
  row("TP", [](const FacetScore& s) { return s.tp; });
  row("Pred", [](const FacetScore& s) { return s.pred_total; });
  row("Gold", [](const FacetScore& s) { return s.gold_total; });
  out << "instances: " << r.n_instances << '\n';
  if (!r.unknown_relations.empty()) {
    out << "unknown relations (" << r.unknown_relation_triplets << " triplets):";
    for (const auto& u : r.unknown_relations) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

}  // namespace speechre
