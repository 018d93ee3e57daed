#include <gtest/gtest.h>

#include <set>

#include "autolin/catalog.hpp"
#include "autolin/lab_json.hpp"
#include "autolin/tm_json.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

TEST(Catalog, EntriesAreUniqueAndDumpable) {
  auto entries = fx::catalog();
  EXPECT_GE(entries.size(), 10u);
  std::set<std::string> names;
  for (auto& e : entries) {
    EXPECT_TRUE(names.insert(e.name).second) << e.name;
    EXPECT_TRUE(fx::dump_fixture(e.name)) << e.name;
  }
  EXPECT_FALSE(fx::dump_fixture("fixture:nope"));
  EXPECT_FALSE(fx::dump_fixture("nocolon"));
}

TEST(Catalog, DumpsReloadByteExact) {
  for (auto& e : fx::catalog()) {
    Json j = *fx::dump_fixture(e.name);
    std::string once = dump_json(j);
    std::string twice;
    if (e.kind == "function" || e.kind == "relation") {
      twice = dump_json(to_json(dfa_from_json(parse_json(once))));
    } else if (e.kind == "machine") {
      twice = dump_json(to_json(tm_from_json(parse_json(once))));
    } else if (e.kind == "family") {
      twice = dump_json(to_json(family_from_json(parse_json(once))));
    } else {
      twice = dump_json(parse_json(once));
    }
    EXPECT_EQ(once, twice) << e.name;
  }
}

TEST(Catalog, ReloadedFamilyKeepsLanguages) {
  AutomaticFamily f = family_from_json(*fx::dump_fixture("family:thm35"));
  const Alphabet& s = f.word_alphabet();
  Dfa l = language_of(f, f.index_alphabet().parse("011"));
  EXPECT_TRUE(l.accepts(s.parse("012")));
  EXPECT_FALSE(l.accepts(s.parse("2")));
}

TEST(Catalog, EveryLearnerHasFamily) {
  for (auto& n : fx::learner_names()) {
    auto fam = fx::learner_family(n);
    ASSERT_TRUE(fam) << n;
    EXPECT_TRUE(fx::family_fixture(*fam)) << n;
    auto l = fx::make_learner(n);
    ASSERT_TRUE(l) << n;
    EXPECT_EQ(l->name(), n);
  }
}

TEST(LabJson, WordTextRoundTrip) {
  Alphabet s = Alphabet::plain({"a", "b"});
  Alphabet c = Alphabet::convolution({s, s});
  Word w = convolve({s.parse("a"), s.parse("bbb")}, c);
  EXPECT_EQ(word_from_text(c, word_to_text(c, w)), w);
  EXPECT_EQ(word_from_json(c, word_to_json(c, w)), w);
  EXPECT_EQ(word_from_text(s, "ab"), s.parse("ab"));
}

TEST(LabJson, SessionReportFields) {
  auto l = fx::make_learner("twotape:missing-string");
  ASSERT_TRUE(l);
  Dfa lang = minimize(complement(singleton(Alphabet::plain({"0", "1"}), Word{1})));
  Text t = make_text(TextKind::Canonical, lang);
  SessionReport r = run_session(*l, t, 40, l->default_rate, l->default_slack);
  Json j = to_json(r, Alphabet::plain({"0", "1"}), l->hypothesis_alphabet());
  EXPECT_EQ(j["cycles"].size(), 40u);
  EXPECT_EQ(j["final_hypothesis"], word_to_json(l->hypothesis_alphabet(), Word{1}));
  EXPECT_TRUE(j["budgets_clean"].get<bool>());
  EXPECT_TRUE(j["correct"].is_null());
  for (auto& c : j["cycles"]) EXPECT_TRUE(c["within_budget"].get<bool>());
  Json brief = to_json(r, Alphabet::plain({"0", "1"}), l->hypothesis_alphabet(), false);
  EXPECT_FALSE(brief.contains("cycles"));
}
