#include <benchmark/benchmark.h>

#include <string>

#include "speechre/align.hpp"

namespace {

const std::string kSentence =
    "When bin-laden fled the U-S invasion in 2001, he took refuge with Hakone in a safe house between the "
    "Afghan City of Coast and Muran Shaw, according to Pakistani author Akmed Rashid.";

void BM_Levenshtein(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(speechre::levenshtein("Ahmed Rashid", "Akmed Rashid"));
}
BENCHMARK(BM_Levenshtein);

void BM_BestFuzzySubstring(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(speechre::best_fuzzy_substring("Miran Shah", kSentence));
}
BENCHMARK(BM_BestFuzzySubstring);

void BM_BestFuzzySubstringLongText(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += kSentence + " ";
  for (auto _ : state) benchmark::DoNotOptimize(speechre::best_fuzzy_substring("Ahmed Rashid", text));
}
BENCHMARK(BM_BestFuzzySubstringLongText)->Arg(1)->Arg(4)->Arg(16);

void BM_Wer(benchmark::State& state) {
  const std::string ref =
      "When bin Laden fled the U.S. invasion in 2001, he took refuge with Haqqani in a safe house between the "
      "Afghan city of Khost and Miran Shah, according to Pakistani author Ahmed Rashid.";
  for (auto _ : state) benchmark::DoNotOptimize(speechre::wer(ref, kSentence));
}
BENCHMARK(BM_Wer);

}  // namespace

BENCHMARK_MAIN();
