#include <benchmark/benchmark.h>

#include <random>

#include "speechre/scorer.hpp"

namespace {

struct Corpus {
  speechre::Manifest gold;
  speechre::Predictions pred;
};

Corpus make_corpus(std::size_t n) {
  std::mt19937_64 rng(1);
  const auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  const std::vector<std::string> entities = {"Ahmed Rashid", "Pakistani", "Khost", "Miran Shah", "bin Laden",
                                             "Haqqani", "U.S."};
  Corpus c;
  c.gold.name = "bench";
  c.gold.relations = {"r0", "r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8", "r9"};
  for (std::size_t i = 0; i < n; ++i) {
    speechre::RelationInstance inst;
    inst.id = std::to_string(i);
    inst.transcript = "t";
    for (std::size_t k = 0; k < 1 + pick(3); ++k)
      inst.triplets.push_back({entities[pick(entities.size())], c.gold.relations[pick(10)],
                               entities[pick(entities.size())]});
    auto pred = inst.triplets;
    if (pick(2)) pred.back().relation = c.gold.relations[pick(10)];
    c.pred[inst.id] = pred;
    c.gold.instances.push_back(std::move(inst));
  }
  return c;
}

void BM_EvaluateCorpus(benchmark::State& state) {
  const auto c = make_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(speechre::evaluate_corpus(c.gold, c.pred));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateCorpus)->Arg(100)->Arg(2500);

void BM_EvaluateCorpusRelaxed(benchmark::State& state) {
  const auto c = make_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(speechre::evaluate_corpus(c.gold, c.pred, speechre::NormalizationPolicy::relaxed()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvaluateCorpusRelaxed)->Arg(2500);

}  // namespace

BENCHMARK_MAIN();
