#include <gtest/gtest.h>

#include "speechre/align.hpp"
#include "speechre/error.hpp"
#include "test_support.hpp"

using namespace speechre;
namespace t = speechre::testing;

namespace {

const std::string kAsrSentence =
    "When bin-laden fled the U-S invasion in 2001, he took refuge with Hakone in a safe house between the "
    "Afghan City of Coast and Muran Shaw, according to Pakistani author Akmed Rashid.";

const std::string kGoldSentence =
    "When bin Laden fled the U.S. invasion in 2001, he took refuge with Haqqani in a safe house between the "
    "Afghan city of Khost and Miran Shah, according to Pakistani author Ahmed Rashid.";

std::string random_ascii(std::mt19937_64& rng, std::size_t max_len) {
  std::string s(t::pick(rng, max_len + 1), ' ');
  for (auto& c : s) c = "abcAB -"[t::pick(rng, 7)];
  return s;
}

}  // namespace

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("a", "a"), 0u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("é", "e"), 1u);  // code points, not bytes
}

TEST(Levenshtein, MetricProperties) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_ascii(rng, 10), b = random_ascii(rng, 10), c = random_ascii(rng, 10);
    ASSERT_EQ(levenshtein(a, a), 0u);
    ASSERT_EQ(levenshtein(a, b), levenshtein(b, a));
    ASSERT_LE(levenshtein(a, c), levenshtein(a, b) + levenshtein(b, c));
    ASSERT_EQ(levenshtein(a, b), t::oracle_levenshtein(a, b));
  }
}

TEST(FuzzyRatio, Examples) {
  EXPECT_EQ(fuzzy_ratio("x", "x"), 100);
  EXPECT_EQ(fuzzy_ratio("abc", "xyz"), 0);
  EXPECT_EQ(fuzzy_ratio("Ahmed Rashid", "Akmed Rashid"), 92);
  EXPECT_EQ(fuzzy_ratio("", ""), 100);
  EXPECT_EQ(fuzzy_ratio("ab", "abc"), 67);  // 66.67 rounds up
  EXPECT_EQ(fuzzy_ratio("a", "ab"), 50);    // exact half rounds up
}

TEST(FuzzyRatio, HundredIffEqual) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 5000; ++i) {
    auto a = random_ascii(rng, 6), b = random_ascii(rng, 6);
    if (a.empty() || b.empty()) continue;
    ASSERT_EQ(fuzzy_ratio(a, b) == 100, a == b) << a << "|" << b;
    ASSERT_EQ(fuzzy_ratio(a, b), t::oracle_ratio(a, b));
  }
}

TEST(BestFuzzySubstring, Examples) {
  auto r = best_fuzzy_substring("Ahmed Rashid", "...according to Pakistani author Ahmed Rashid.");
  EXPECT_EQ(r.matched, "Ahmed Rashid");
  EXPECT_EQ(r.score, 100);
  EXPECT_EQ(r.begin, 33u);
  EXPECT_EQ(r.end, 45u);
  r = best_fuzzy_substring("Haqqani", "he took refuge with Hakone in a safe house");
  EXPECT_EQ(r.matched, "Hakone");
  EXPECT_EQ(r.score, 43);
}

TEST(BestFuzzySubstring, AsrSentenceFromGoldEntities) {
  const std::pair<const char*, std::pair<const char*, int>> cases[] = {
      {"Ahmed Rashid", {"Akmed Rashid", 92}}, {"Pakistani", {"Pakistani", 100}},
      {"Haqqani", {"Pakistani", 44}},         {"Khost", {"house", 40}},
      {"Miran Shah", {"Muran Shaw", 80}},     {"bin Laden", {"bin-laden", 89}},
  };
  for (const auto& [entity, expected] : cases) {
    const auto r = best_fuzzy_substring(entity, kAsrSentence);
    EXPECT_EQ(r.matched, expected.first) << entity;
    EXPECT_EQ(r.score, expected.second) << entity;
  }
}

TEST(BestFuzzySubstring, MatchesExhaustiveWindowOracle) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto entity = t::random_entity(rng);
    const auto text = t::random_text(rng, 30);
    const auto expected = t::oracle_best_window(entity, text);
    if (expected.score < 0) {
      EXPECT_THROW(best_fuzzy_substring(entity, text), Error) << text;
      continue;
    }
    const auto r = best_fuzzy_substring(entity, text);
    ASSERT_EQ(r.matched, expected.matched) << entity << " in " << text;
    ASSERT_EQ(r.score, expected.score) << entity << " in " << text;
    ASSERT_EQ(r.begin, expected.begin);
    ASSERT_EQ(r.end, expected.end);
  }
}

TEST(BestFuzzySubstring, RejectsBlankOrPunctuationOnlyText) {
  EXPECT_THROW(best_fuzzy_substring("x", "   "), Error);
  EXPECT_THROW(best_fuzzy_substring("x", "... -- !"), Error);
}

TEST(Relabel, AkmedRashid) {
  RelationInstance inst;
  inst.id = "t4";
  inst.transcript = kGoldSentence;
  inst.triplets = {{"Ahmed Rashid", "person origin", "Pakistani"}};
  const auto out = relabel_instance(inst, kAsrSentence, 80);
  ASSERT_EQ(out.triplets.size(), 1u);
  EXPECT_EQ(out.triplets[0].head, "Akmed Rashid");
  EXPECT_EQ(out.triplets[0].tail, "Pakistani");
  EXPECT_EQ(out.transcript, kAsrSentence);
  EXPECT_EQ(out.provenance, std::vector<std::string>{"relabeled"});
}

TEST(Relabel, IdenticalHypothesisOnlyAddsProvenance) {
  RelationInstance inst;
  inst.id = "same";
  inst.transcript = kGoldSentence;
  inst.triplets = {{"Ahmed Rashid", "person origin", "Pakistani"}, {"bin Laden", "live in", "Khost"}};
  auto out = relabel_instance(inst, inst.transcript, 80);
  EXPECT_EQ(out.triplets, inst.triplets);
  EXPECT_EQ(out.transcript, inst.transcript);
  out.provenance.clear();
  EXPECT_EQ(out, inst);
}

TEST(Relabel, LowScoreTripletIsDroppedAndRecorded) {
  RelationInstance inst;
  inst.id = "drop";
  inst.transcript = kGoldSentence;
  inst.triplets = {{"Haqqani", "located in", "Khost"}, {"Ahmed Rashid", "person origin", "Pakistani"}};
  const auto out = relabel_instance(inst, kAsrSentence, 80);
  ASSERT_EQ(out.triplets.size(), 1u);
  EXPECT_EQ(out.triplets[0].head, "Akmed Rashid");
  ASSERT_EQ(out.provenance.size(), 2u);
  EXPECT_EQ(out.provenance[1], "dropped Haqqani | located in | Khost (head 44, tail 40, threshold 80)");
}

TEST(Relabel, IdempotentUnderFixedHypothesis) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    RelationInstance inst;
    inst.id = "r" + std::to_string(i);
    inst.transcript = "x";
    for (std::size_t k = 0; k < 1 + t::pick(rng, 3); ++k)
      inst.triplets.push_back({t::random_entity(rng), "rel", t::random_entity(rng)});
    const auto hyp = t::random_text(rng, 30);
    const int threshold = static_cast<int>(t::pick(rng, 101));
    if (t::oracle_best_window("x", hyp).score < 0) continue;  // nothing to align against
    const auto once = relabel_instance(inst, hyp, threshold);
    if (once.triplets.empty()) continue;
    ASSERT_EQ(relabel_instance(once, hyp, threshold), once) << hyp;
  }
}

TEST(Relabel, Errors) {
  RelationInstance inst;
  inst.id = "e";
  inst.transcript = "a b";
  EXPECT_THROW(relabel_instance(inst, "a b", 50), Error);
  inst.triplets = {{"a", "r", "b"}};
  EXPECT_THROW(relabel_instance(inst, "  ", 50), Error);
}

TEST(Wer, Examples) {
  EXPECT_EQ(wer("a b c", "a b c"), Ratio(0, 1));
  EXPECT_EQ(wer("a b", ""), Ratio(1, 1));
  EXPECT_EQ(wer("a b c", "a x c"), Ratio(1, 3));
  EXPECT_EQ(wer("a", "x y z"), Ratio(3, 1));  // insertions can push past 1
  EXPECT_THROW(wer("", "a"), Error);
}

TEST(Wer, BreakdownMatchesDistance) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> r(1 + t::pick(rng, 8)), h(t::pick(rng, 8));
    for (auto& w : r) w = std::string(1, "abcd"[t::pick(rng, 4)]);
    for (auto& w : h) w = std::string(1, "abcd"[t::pick(rng, 4)]);
    const auto e = word_errors(r, h);
    std::string rs, hs;
    for (auto& w : r) rs += w;
    for (auto& w : h) hs += w;
    ASSERT_EQ(e.errors(), t::oracle_levenshtein(rs, hs));
    ASSERT_EQ(r.size() - e.deletions + e.insertions, h.size());
  }
}
