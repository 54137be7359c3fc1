#include <gtest/gtest.h>

#include <set>

#include "speechre/augment.hpp"
#include "speechre/error.hpp"
#include "test_support.hpp"

using namespace speechre;
namespace t = speechre::testing;

namespace {

RelationInstance pseudo(std::string id, Triplet triplet) {
  RelationInstance inst;
  inst.id = std::move(id);
  inst.transcript = "s.";
  inst.source = std::string(source::pseudo);
  inst.triplets = {std::move(triplet)};
  return inst;
}

std::vector<RelationInstance> candidates_of(std::string relation, std::size_t n, std::string prefix = "c") {
  std::vector<RelationInstance> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(pseudo(prefix + std::to_string(100 + i), {"Acme", relation, "Boston"}));
  return out;
}

const std::set<std::string> kAllowed = {"per:title", "r1", "r2"};

}  // namespace

TEST(Filter, PronounPairDropped) {
  const std::vector<RelationInstance> in = {pseudo("p", {"he", "per:title", "she"})};
  const auto r = filter_pseudo(in, kAllowed);
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].reason, DropReason::pronoun_pair);
  EXPECT_TRUE(r.kept.empty());
}

TEST(Filter, SinglePronounKept) {
  const std::vector<RelationInstance> in = {pseudo("p", {"He", "per:title", "president"})};
  EXPECT_EQ(filter_pseudo(in, kAllowed).kept.size(), 1u);
}

TEST(Filter, MissingEntityDropped) {
  const std::vector<RelationInstance> in = {pseudo("m", {"", "r1", "B"})};
  const auto r = filter_pseudo(in, kAllowed);
  ASSERT_EQ(r.dropped.size(), 1u);
  EXPECT_EQ(r.dropped[0].reason, DropReason::missing_entity);
  EXPECT_EQ(drop_record_to_json(r.dropped[0]), R"({"id":"m","reason":"missing_entity","detail":"no subject entity"})");
}

TEST(Filter, WellFormedKept) {
  const std::vector<RelationInstance> in = {pseudo("k", {"Ahmed Rashid", "per:title", "author"})};
  const auto r = filter_pseudo(in, kAllowed);
  EXPECT_EQ(r.kept, in);
  EXPECT_TRUE(r.dropped.empty());
}

TEST(Filter, RuleOrderIsFixed) {
  const std::vector<RelationInstance> in = {
      pseudo("a", {"he", std::string(kNoRelation), "she"}),
      pseudo("b", {"", "r9", "she"}),
      pseudo("c", {"he", "r9", "she"}),
      pseudo("d", {"Acme", "r9", "Boston"}),
  };
  const auto r = filter_pseudo(in, kAllowed);
  ASSERT_EQ(r.dropped.size(), 4u);
  EXPECT_EQ(r.dropped[0].reason, DropReason::no_relation);
  EXPECT_EQ(r.dropped[1].reason, DropReason::missing_entity);
  EXPECT_EQ(r.dropped[2].reason, DropReason::pronoun_pair);
  EXPECT_EQ(r.dropped[3].reason, DropReason::foreign_relation);
  EXPECT_EQ(r.dropped[3].detail, "r9");
}

TEST(Filter, NonPseudoInputIsAnError) {
  auto inst = pseudo("g", {"A", "r1", "B"});
  inst.source = std::string(source::gold);
  EXPECT_THROW(filter_pseudo(std::vector<RelationInstance>{inst}, kAllowed), Error);
}

TEST(Filter, PlantedFixtureRecoversCleanSubset) {
  const auto f = t::planted_pseudo_fixture(1000, 99);
  const auto r = filter_pseudo(f.candidates, f.allowed);
  ASSERT_EQ(r.kept.size() + r.dropped.size(), f.candidates.size());

  std::vector<std::string> expected_kept;
  std::map<std::string, std::string> expected_reason;
  for (std::size_t i = 0; i < f.candidates.size(); ++i) {
    if (f.expected[i].empty())
      expected_kept.push_back(f.candidates[i].id);
    else
      expected_reason[f.candidates[i].id] = f.expected[i];
  }
  std::vector<std::string> kept;
  for (const auto& inst : r.kept) kept.push_back(inst.id);
  EXPECT_EQ(kept, expected_kept);
  ASSERT_EQ(r.dropped.size(), expected_reason.size());
  for (const auto& d : r.dropped) EXPECT_EQ(to_string(d.reason), expected_reason.at(d.id)) << d.id;

  // Every rule is exercised by the fixture.
  std::set<DropReason> seen;
  for (const auto& d : r.dropped) seen.insert(d.reason);
  EXPECT_EQ(seen.size(), 4u);
}

TEST(Pronouns, LexiconParsing) {
  const auto set = parse_pronoun_list("# comment\nHe  # trailing\n\n  them\n");
  EXPECT_EQ(set, (PronounSet{"he", "them"}));
  EXPECT_TRUE(default_pronouns().contains("themselves"));
  EXPECT_FALSE(default_pronouns().contains("theo"));
  EXPECT_EQ(default_pronoun_lexicon_version(), "pronouns-en-v1");
}

TEST(Sample, EighteenOfTwentyFive) {
  const auto kept = candidates_of("r1", 25);
  const auto a = sample_per_relation(kept, {{"r1", 10}}, parse_ratio("1.8"), 7);
  EXPECT_EQ(a.size(), 18u);
  const auto b = sample_per_relation(kept, {{"r1", 10}}, parse_ratio("1.8"), 7);
  EXPECT_EQ(a, b);
  std::set<std::string> ids;
  for (const auto& inst : a) ids.insert(inst.id);
  EXPECT_EQ(ids.size(), 18u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.id < y.id; }));
}

TEST(Sample, CappedByAvailability) {
  const auto kept = candidates_of("r1", 5);
  EXPECT_EQ(sample_per_relation(kept, {{"r1", 10}}, parse_ratio("1.8"), 7).size(), 5u);
}

TEST(Sample, ZeroFactorIsEmpty) {
  EXPECT_TRUE(sample_per_relation(candidates_of("r1", 25), {{"r1", 10}}, Ratio(0, 1), 7).empty());
}

TEST(Sample, PerRelationCountsAndSubset) {
  std::vector<RelationInstance> kept = candidates_of("r1", 40, "a");
  const auto r2 = candidates_of("r2", 3, "b");
  const auto r3 = candidates_of("r3", 9, "c");
  kept.insert(kept.end(), r2.begin(), r2.end());
  kept.insert(kept.end(), r3.begin(), r3.end());
  const std::map<std::string, std::size_t> gold = {{"r1", 7}, {"r2", 4}};
  const auto out = sample_per_relation(kept, gold, parse_ratio("2.5"), 3);
  std::map<std::string, std::size_t> per;
  for (const auto& inst : out) {
    ++per[inst.triplets[0].relation];
    EXPECT_NE(std::find(kept.begin(), kept.end(), inst), kept.end());
  }
  EXPECT_EQ(per["r1"], 18u);  // round(17.5) half up
  EXPECT_EQ(per["r2"], 3u);
  EXPECT_EQ(per["r3"], 0u);
}

TEST(Sample, SeedChangesSelection) {
  const auto kept = candidates_of("r1", 25);
  EXPECT_NE(sample_per_relation(kept, {{"r1", 10}}, Ratio(1, 1), 1),
            sample_per_relation(kept, {{"r1", 10}}, Ratio(1, 1), 2));
}

TEST(Sample, MultiTripletInstanceIsAnError) {
  auto kept = candidates_of("r1", 2);
  kept[1].triplets.push_back(kept[1].triplets[0]);
  EXPECT_THROW(sample_per_relation(kept, {{"r1", 1}}, Ratio(1, 1), 0), Error);
}
