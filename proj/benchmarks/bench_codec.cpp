#include <benchmark/benchmark.h>

#include <random>

#include "speechre/triplet_codec.hpp"

namespace {

std::vector<speechre::Triplet> make_triplets(std::size_t n) {
  std::vector<speechre::Triplet> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"Ahmed Rashid " + std::to_string(i), "person origin", "Pakistani author"});
  return out;
}

void BM_Linearize(benchmark::State& state) {
  const auto triplets = make_triplets(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(speechre::linearize(triplets));
}
BENCHMARK(BM_Linearize)->Arg(1)->Arg(8)->Arg(64);

void BM_ParseStrict(benchmark::State& state) {
  const auto s = speechre::linearize(make_triplets(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(speechre::parse_strict(s));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_ParseStrict)->Arg(1)->Arg(8)->Arg(64);

void BM_ParseLenient(benchmark::State& state) {
  auto s = speechre::linearize(make_triplets(static_cast<std::size_t>(state.range(0))));
  s += " <triplet> truncated <subj>";
  for (auto _ : state) benchmark::DoNotOptimize(speechre::parse_lenient(s));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}
BENCHMARK(BM_ParseLenient)->Arg(1)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
