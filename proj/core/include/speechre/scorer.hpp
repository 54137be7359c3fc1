#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speechre/ratio.hpp"
#include "speechre/text.hpp"
#include "speechre/types.hpp"

namespace speechre {

/// Micro counts for one facet. Scores are exact and derived on demand.
struct FacetScore {
  std::size_t tp = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;

  Ratio precision() const { return {tp, pred_total}; }
  Ratio recall() const { return {tp, gold_total}; }
  // Harmonic mean of P and R reduces to 2tp / (pred + gold).
  Ratio f1() const { return {2 * tp, pred_total + gold_total}; }

  FacetScore& operator+=(const FacetScore& o) {
    tp += o.tp;
    pred_total += o.pred_total;
    gold_total += o.gold_total;
    return *this;
  }

  friend bool operator==(const FacetScore&, const FacetScore&) = default;
};

/// Predicted triplets keyed by instance id.
using Predictions = std::map<std::string, std::vector<Triplet>>;

FacetScore score_entities(std::span<const RelationInstance> gold, const Predictions& pred,
                          NormalizationPolicy policy = NormalizationPolicy::strict());
FacetScore score_relations(std::span<const RelationInstance> gold, const Predictions& pred,
                           NormalizationPolicy policy = NormalizationPolicy::strict());
FacetScore score_triplets(std::span<const RelationInstance> gold, const Predictions& pred,
                          NormalizationPolicy policy = NormalizationPolicy::strict());

struct EvalReport {
  FacetScore entity;
  FacetScore relation;
  FacetScore triplet;
  std::map<std::string, FacetScore> per_relation;
  std::size_t n_instances = 0;
  NormalizationPolicy policy;
  // Predicted labels absent from the gold inventory and how many triplets used them.
  std::vector<std::string> unknown_relations;
  std::size_t unknown_relation_triplets = 0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Scores all gold instances (optionally one split). Gold ids without a
/// prediction count as empty predictions; prediction ids unknown to the
/// manifest are an error; ids from other splits are ignored.
EvalReport evaluate_corpus(const Manifest& gold, const Predictions& pred,
                           NormalizationPolicy policy = NormalizationPolicy::strict(),
                           std::optional<Split> split = std::nullopt);

std::string report_to_json(const EvalReport& report);
/// Fixed-width table with Entity | Relation | Triplet columns.
std::string format_report_table(const EvalReport& report);

}  // namespace speechre
