#include <gtest/gtest.h>

#include <set>

#include "speechre/error.hpp"
#include "speechre/triplet_codec.hpp"
#include "test_support.hpp"

using namespace speechre;

namespace {

std::vector<WarningKind> kinds(const LenientParse& p) {
  std::vector<WarningKind> out;
  for (const auto& w : p.warnings) out.push_back(w.kind);
  return out;
}

}  // namespace

TEST(Codec, GoldenRow) {
  const std::vector<Triplet> t = {{"Ahmed Rashid", "person origin", "Pakistani"}};
  const std::string golden = "<triplet> Ahmed Rashid <subj> Pakistani <obj> person origin";
  EXPECT_EQ(linearize(t), golden);
  const auto parsed = parse_strict(golden);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0].head, "Ahmed Rashid");
  EXPECT_EQ(parsed[0].tail, "Pakistani");
  EXPECT_EQ(parsed[0].relation, "person origin");
}

TEST(Codec, EmptyListIsEmptyString) {
  EXPECT_EQ(linearize({}), "");
  EXPECT_TRUE(parse_strict("").empty());
  EXPECT_TRUE(parse_strict("  \n").empty());
  const auto lenient = parse_lenient("");
  EXPECT_TRUE(lenient.triplets.empty());
  EXPECT_TRUE(lenient.warnings.empty());
}

TEST(Codec, StrictSingleTriplet) {
  EXPECT_EQ(parse_strict("<triplet> A <subj> B <obj> r"), (std::vector<Triplet>{{"A", "r", "B"}}));
}

TEST(Codec, StrictMissingFieldAtEnd) {
  const std::string s = "<triplet> A <subj> B";
  try {
    parse_strict(s);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), s.size());
    EXPECT_NE(std::string(e.what()).find("missing field"), std::string::npos);
  }
}

TEST(Codec, StrictRejectsMalformedInput) {
  EXPECT_THROW(parse_strict("A <subj> B <obj> r"), ParseError);
  EXPECT_THROW(parse_strict("<triplet> <subj> B <obj> r"), ParseError);
  EXPECT_THROW(parse_strict("<triplet> A <subj> B <obj>"), ParseError);
  EXPECT_THROW(parse_strict("<triplet> A <subj> B <obj> r<triplet>"), ParseError);
  EXPECT_THROW(parse_strict("<triplet> A <obj> B <subj> r"), ParseError);
}

TEST(Codec, StrictPreservesFieldInteriors) {
  EXPECT_EQ(parse_strict("<triplet>  A \t B <subj> C  D <obj> r  s "),
            (std::vector<Triplet>{{"A \t B", "r  s", "C  D"}}));
}

TEST(Codec, LinearizeRejectsReservedMarkers) {
  const std::vector<Triplet> bad = {{"A <obj>", "r", "B"}};
  EXPECT_THROW(linearize(bad), Error);
}

TEST(Codec, LenientTruncatedTail) {
  const auto p = parse_lenient("<triplet> A <subj> B <obj> r <triplet> C <subj>");
  EXPECT_EQ(p.triplets, (std::vector<Triplet>{{"A", "r", "B"}}));
  EXPECT_EQ(kinds(p), std::vector<WarningKind>{WarningKind::truncated_triplet});
  EXPECT_EQ(p.warnings[0].position, 29u);
}

TEST(Codec, LenientGarbage) {
  const auto p = parse_lenient("garbage text");
  EXPECT_TRUE(p.triplets.empty());
  EXPECT_EQ(kinds(p), std::vector<WarningKind>{WarningKind::stray_text});
}

TEST(Codec, LenientTaxonomy) {
  auto p = parse_lenient("<triplet> A <subj> <obj> r");
  EXPECT_EQ(kinds(p), std::vector<WarningKind>{WarningKind::empty_field});
  p = parse_lenient("<triplet> A <obj> B <triplet> C <subj> D <obj> s");
  EXPECT_EQ(kinds(p), std::vector<WarningKind>{WarningKind::missing_field});
  EXPECT_EQ(p.triplets, (std::vector<Triplet>{{"C", "s", "D"}}));
  p = parse_lenient("<triplet> A <subj> B <obj> r <subj> junk");
  EXPECT_EQ(kinds(p), std::vector<WarningKind>{WarningKind::stray_text});
  EXPECT_EQ(p.triplets, (std::vector<Triplet>{{"A", "r", "B"}}));
  p = parse_lenient("<triplet>A<subj>B<obj>r");
  EXPECT_EQ(p.triplets, (std::vector<Triplet>{{"A", "r", "B"}}));
  EXPECT_TRUE(p.warnings.empty());
}

TEST(Codec, RoundTripAndLenientEquivalence) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 3000; ++i) {
    const auto t = speechre::testing::random_triplets(rng, 4);
    const auto s = linearize(t);
    ASSERT_EQ(parse_strict(s), t) << s;
    const auto lenient = parse_lenient(s);
    ASSERT_EQ(lenient.triplets, t) << s;
    ASSERT_TRUE(lenient.warnings.empty()) << s;
  }
}

TEST(Codec, LenientSubsumesStrictOnPrefixes) {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 300; ++i) {
    const auto s = linearize(speechre::testing::random_triplets(rng, 3));
    for (std::size_t n = 0; n <= s.size(); ++n) {
      const auto prefix = std::string_view(s).substr(0, n);
      std::vector<Triplet> strict;
      try {
        strict = parse_strict(prefix);
      } catch (const ParseError&) {
        continue;
      }
      ASSERT_GE(parse_lenient(prefix).triplets.size(), strict.size()) << prefix;
    }
  }
}

TEST(Codec, LinearizeIsInjective) {
  std::mt19937_64 rng(303);
  std::map<std::string, std::vector<Triplet>> seen;
  for (int i = 0; i < 5000; ++i) {
    auto t = speechre::testing::random_triplets(rng, 2);
    const auto [it, inserted] = seen.emplace(linearize(t), t);
    if (!inserted) ASSERT_EQ(it->second, t);
  }
}
