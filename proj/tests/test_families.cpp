#include <gtest/gtest.h>

#include "autolin/family_fixtures.hpp"
#include "oracles.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

namespace {

AutomaticFamily family(const std::string& n) {
  for (auto& f : fx::family_fixtures()) {
    if (f.name == n) return f.make();
  }
  throw std::runtime_error("no family " + n);
}

}  // namespace

TEST(Families, AllFixturesNonempty) {
  for (auto& f : fx::family_fixtures()) {
    NonemptyReport r = validate_nonempty(f.make());
    EXPECT_TRUE(r.pass) << f.name;
    EXPECT_FALSE(r.stray_index) << f.name;
  }
}

TEST(Families, ExtensionsLanguage) {
  auto fam = family("extensions");
  const Alphabet& s = fam.word_alphabet();
  Dfa l = language_of(fam, s.parse("01"));
  EXPECT_TRUE(l.accepts(s.parse("01")));
  EXPECT_TRUE(l.accepts(s.parse("0110")));
  EXPECT_FALSE(l.accepts(s.parse("0")));
}

TEST(Families, IntervalsLanguage) {
  auto fam = family("intervals");
  const Alphabet& s = fam.word_alphabet();
  Word e = convolve({s.parse("a"), s.parse("b")}, fam.index_alphabet());
  ASSERT_TRUE(fam.is_index(e));
  Dfa l = language_of(fam, e);
  EXPECT_TRUE(l.accepts(s.parse("a")));
  EXPECT_TRUE(l.accepts(s.parse("abbb")));
  EXPECT_TRUE(l.accepts(s.parse("b")));
  EXPECT_FALSE(l.accepts(s.parse("ba")));
  EXPECT_FALSE(l.accepts(Word{}));
  EXPECT_FALSE(fam.is_index(convolve({s.parse("b"), s.parse("a")}, fam.index_alphabet())));
}

TEST(Families, MarkedFamilyLanguages) {
  auto fam = family("thm35");
  const Alphabet& s = fam.word_alphabet();
  const Alphabet& i = fam.index_alphabet();
  Dfa l1 = language_of(fam, i.parse("011"));
  EXPECT_TRUE(l1.accepts(s.parse("012")));
  EXPECT_TRUE(l1.accepts(s.parse("01")));
  Dfa l0 = language_of(fam, i.parse("010"));
  EXPECT_TRUE(l0.accepts(s.parse("012")));
  EXPECT_FALSE(l0.accepts(s.parse("01")));
  Dfa le = language_of(fam, Word{});
  EXPECT_FALSE(le.accepts(s.parse("2")));
  EXPECT_TRUE(le.accepts(s.parse("0101")));
}

TEST(Families, MembershipMatchesLanguageOf) {
  for (auto& f : fx::family_fixtures()) {
    AutomaticFamily fam = f.make();
    for (std::size_t len = 0; len <= 2; ++len) {
      for (auto& e : words_of_length(fam.index_dfa(), len)) {
        Dfa l = language_of(fam, e);
        for (auto& x : oracle::all_words(fam.word_alphabet().size(), 4)) ASSERT_EQ(l.accepts(x), fam.member(e, x)) << f.name;
      }
    }
  }
}

TEST(Families, SubsetIndexSet) {
  auto fam = family("extensions");
  const Alphabet& i = fam.index_alphabet();
  Dfa sub = subset_index_set(fam, i.parse("0"));
  EXPECT_TRUE(sub.accepts(i.parse("0")));
  EXPECT_TRUE(sub.accepts(i.parse("011")));
  EXPECT_FALSE(sub.accepts(i.parse("1")));
  EXPECT_FALSE(sub.accepts(Word{}));
}

TEST(Telltale, ScanCertifiesLearnableFixtures) {
  for (const char* n : {"extensions", "intervals", "length-excl", "thm35", "complement-singleton"}) {
    TelltaleReport r = learnability_scan(family(n), 3, 5);
    EXPECT_TRUE(r.all_certified()) << n;
  }
}

TEST(Telltale, GoldIndexOneHasVerifiedBlocker) {
  auto fam = family("gold");
  TelltaleReport r = learnability_scan(fam, 1, 6);
  bool seen = false;
  for (auto& e : r.entries) {
    if (e.index != Word{1}) {
      EXPECT_TRUE(e.level);
      continue;
    }
    seen = true;
    EXPECT_FALSE(e.level);
    ASSERT_TRUE(e.blocker);
    EXPECT_TRUE(e.blocker_checked);
    EXPECT_TRUE(verify_blocker(fam, e.index, *e.blocker, 6));
  }
  EXPECT_TRUE(seen);
}

class TelltaleOracleCheck : public ::testing::TestWithParam<const char*> {};

TEST_P(TelltaleOracleCheck, LevelSetsAgreeWithBruteForce) {
  auto fam = family(GetParam());
  std::size_t bmax = std::string(GetParam()) == "gold" ? 6 : 4;
  auto r = oracle::cross_check_telltale(fam, 3, bmax);
  for (auto& e : r.errors) ADD_FAILURE() << e;
  EXPECT_GT(r.agreements, 0u);
  if (r.horizon_reports) {
    std::cout << GetParam() << ": " << r.horizon_reports << " disagreements beyond the oracle horizon\n";
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, TelltaleOracleCheck,
                         ::testing::Values("extensions", "intervals", "length-excl", "thm35", "complement-singleton",
                                           "gold"),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& c : s) {
                             if (c == '-') c = '_';
                           }
                           return s;
                         });

TEST(Telltale, LevelSetsAreMonotone) {
  auto fam = family("thm35");
  Dfa prev = telltale_level_set(fam, 0);
  for (std::size_t b = 1; b <= 4; ++b) {
    Dfa cur = telltale_level_set(fam, b);
    EXPECT_TRUE(included(prev, cur)) << b;
    prev = cur;
  }
}
