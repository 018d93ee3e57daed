#include <gtest/gtest.h>

#include <map>

#include "autolin/learners.hpp"
#include "oracles.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

namespace {

Alphabet bin() { return Alphabet::plain({"0", "1"}); }

Dfa complement_of(const Word& x) { return minimize(complement(singleton(bin(), x))); }

/// Replays data through an automatic learner and returns the final hypothesis.
Word replay(const AutomaticLearner& m, const std::vector<Word>& data) {
  Word mem = m.initial_memory, hyp;
  for (auto& w : data) {
    auto r = m.apply(mem, w);
    EXPECT_TRUE(r);
    mem = r->first;
    hyp = r->second;
  }
  return hyp;
}

std::vector<std::unique_ptr<Learner>> pair_wrappers(std::shared_ptr<const AutomaticLearner> m) {
  std::vector<std::unique_ptr<Learner>> v;
  v.push_back(fx::two_tape_wrapper(m));
  v.push_back(fx::stack_pair_wrapper(m));
  return v;
}

std::vector<std::unique_ptr<Learner>> wrappers(std::shared_ptr<const AutomaticLearner> m) {
  auto v = pair_wrappers(m);
  v.push_back(fx::queue_wrapper(m));
  return v;
}

}  // namespace

TEST(Text, CanonicalIsLengthLex) {
  Text t = make_text(TextKind::Canonical, universal(bin()));
  std::vector<std::string> got;
  for (int i = 0; i < 7; ++i) got.push_back(bin().format(t.next()));
  EXPECT_EQ(got, (std::vector<std::string>{"", "0", "1", "00", "01", "10", "11"}));
}

TEST(Text, CanonicalCyclesFiniteLanguages) {
  Text t = make_text(TextKind::Canonical, length_at_most(bin(), 1));
  std::vector<std::string> got;
  for (int i = 0; i < 6; ++i) got.push_back(bin().format(t.next()));
  EXPECT_EQ(got, (std::vector<std::string>{"", "0", "1", "", "0", "1"}));
}

TEST(Text, FatRepeatsEveryWord) {
  Alphabet a = Alphabet::plain({"a"});
  Text single = make_text(TextKind::Fat, singleton(a, Word{0}));
  for (int i = 0; i < 5; ++i) EXPECT_EQ(single.next(), Word{0});
  Text t = make_text(TextKind::Fat, universal(bin()));
  std::map<Word, int> seen;
  for (int i = 0; i < 300; ++i) ++seen[t.next()];
  for (auto& w : oracle::all_words(2, 2)) EXPECT_GE(seen[w], 5);
}

TEST(Text, EmptyLanguageRejected) { EXPECT_THROW(make_text(TextKind::Canonical, empty_dfa(bin())), LearningError); }

TEST(Text, ScriptedThenCanonicalWithoutRepeats) {
  Text t = make_text(TextKind::Scripted, universal(bin()), 0, {Word{1}, Word{}});
  std::vector<Word> got;
  for (int i = 0; i < 5; ++i) got.push_back(t.next());
  EXPECT_EQ(got, (std::vector<Word>{{1}, {}, {0}, {0, 0}, {0, 1}}));
  EXPECT_THROW(make_text(TextKind::Scripted, complement_of({1}), 0, {Word{1}}), LearningError);
}

TEST(Text, ShuffledIsSeededAndInLanguage) {
  Dfa l = complement_of({0});
  Text a = make_text(TextKind::Shuffled, l, 7), b = make_text(TextKind::Shuffled, l, 7);
  for (int i = 0; i < 50; ++i) {
    Word x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_TRUE(l.accepts(x));
  }
}

TEST(Devices, TapePopsLastWordAndCountsSteps) {
  TapeDevice t;
  t.append_word({0, 1});
  t.append_word({1});
  EXPECT_EQ(t.cycle_steps(), 5u);
  t.start_cycle();
  EXPECT_EQ(t.pop_last_word(), (Word{1}));
  EXPECT_EQ(t.cycle_steps(), 3u);
  EXPECT_EQ(t.pop_last_word(), (Word{0, 1}));
  EXPECT_TRUE(t.empty());
  EXPECT_FALSE(t.pop_last_word());
}

TEST(Devices, StackAndQueueOrders) {
  StackDevice s;
  s.push_word({0});
  s.push_word({1, 1});
  EXPECT_EQ(s.pop_word(), (Word{1, 1}));
  EXPECT_EQ(s.pop_word(), (Word{0}));
  EXPECT_FALSE(s.pop_word());
  QueueDevice q;
  q.enqueue_word({0});
  q.enqueue_word({1, 1});
  EXPECT_EQ(q.dequeue_word(), (Word{0}));
  EXPECT_EQ(q.dequeue_word(), (Word{1, 1}));
  EXPECT_FALSE(q.dequeue_word());
  EXPECT_EQ(q.total_steps(), 2u + 3u + 2u + 3u + 1u);
}

TEST(AutomaticLearners, UpdatesAreCertifiedWithSlackOne) {
  for (auto& e : fx::automatic_learners()) {
    auto m = fx::automatic_learner(e.name);
    EXPECT_TRUE(is_functional(m->update.relation())) << e.name;
    EXPECT_LE(m->update.slack(), 1u) << e.name;
  }
}

TEST(AutomaticLearners, ExtensionsConvergesToCommonPrefix) {
  auto fam = fx::extensions();
  Text t = make_text(TextKind::Canonical, language_of(fam, bin().parse("01")));
  SessionReport r = run_automatic_learner(fx::automatic_learner("extensions"), t, 100);
  EXPECT_EQ(bin().format(r.final_hypothesis), "01");
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.budgets_clean);
}

TEST(AutomaticLearners, IntervalsConvergesToEndpoints) {
  auto fam = fx::intervals();
  const Alphabet& s = fam.word_alphabet();
  Word e = convolve({s.parse("a"), s.parse("b")}, fam.index_alphabet());
  Text t = make_text(TextKind::Canonical, language_of(fam, e));
  SessionReport r = run_automatic_learner(fx::automatic_learner("intervals"), t, 200);
  EXPECT_EQ(r.final_hypothesis, e);
  EXPECT_TRUE(r.budgets_clean);
}

TEST(AutomaticLearners, LengthBitmapConjecturesMissingLength) {
  auto fam = fx::length_exclusion();
  Dfa slice = intersect(language_of(fam, Word{0, 0}), length_at_most(bin(), 4));
  Text t = make_text(TextKind::Canonical, slice);
  SessionReport r = run_automatic_learner(fx::automatic_learner("length-bitmap"), t, 100);
  EXPECT_EQ(r.final_hypothesis, (Word{0, 0}));
}

TEST(AutomaticLearners, MissingStringOnFatText) {
  auto m = fx::automatic_learner("missing-string");
  Text t = make_text(TextKind::Fat, complement_of({0}));
  EXPECT_EQ(run_automatic_learner(m, t, 200).final_hypothesis, (Word{0}));
  Text t2 = make_text(TextKind::Fat, complement_of({}));
  EXPECT_EQ(run_automatic_learner(m, t2, 200).final_hypothesis, Word{});
}

TEST(AutomaticLearners, MissingStringStallsOnOnceOnlyText) {
  auto m = fx::automatic_learner("missing-string");
  Text t = make_text(TextKind::Scripted, complement_of({1, 1}), 0, {Word{0}, Word{}});
  SessionReport r = run_automatic_learner(m, t, 600);
  EXPECT_EQ(r.final_hypothesis, (Word{0}));
}

TEST(AutomaticLearners, OrderIndependentOnPermutedTexts) {
  for (const char* name : {"extensions", "length-bitmap", "missing-string"}) {
    auto m = fx::automatic_learner(name);
    std::string fam_name = *fx::learner_family(name);
    AutomaticFamily fam = [&] {
      for (auto& f : fx::family_fixtures()) {
        if (f.name == fam_name) return f.make();
      }
      throw std::runtime_error("family");
    }();
    Word target = std::string(name) == "extensions" ? Word{0} : std::string(name) == "length-bitmap" ? Word{0, 0} : Word{1};
    Dfa slice = intersect(language_of(fam, target), length_at_most(fam.word_alphabet(), 4));
    std::optional<Word> first;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Text t(TextKind::Shuffled, slice, seed);
      Word h = run_automatic_learner(m, t, 400).final_hypothesis;
      if (!first) first = h;
      EXPECT_EQ(h, *first) << name << " seed " << seed;
    }
  }
}

TEST(Wrappers, FirstCycleFeedsDatumTwice) {
  auto m = fx::automatic_learner("missing-string");
  for (auto& l : pair_wrappers(m)) {
    CycleRecord rec;
    l->cycle(Word{1}, rec);
    EXPECT_EQ(rec.fed, (std::vector<Word>{{1}, {1}})) << l->name();
  }
  auto q = fx::queue_wrapper(m);
  CycleRecord rec;
  q->cycle(Word{1}, rec);
  EXPECT_EQ(rec.fed, (std::vector<Word>{{1}}));
}

TEST(Wrappers, TransparentOverFedData) {
  auto m = fx::automatic_learner("missing-string");
  for (auto& l : wrappers(m)) {
    Text t = make_text(TextKind::Canonical, complement_of({0, 1}));
    SessionReport r = run_session(*l, t, 200, l->default_rate, l->default_slack);
    std::vector<Word> fed;
    for (auto& c : r.cycles) {
      fed.insert(fed.end(), c.fed.begin(), c.fed.end());
      ASSERT_EQ(replay(*m, fed), c.hypothesis) << l->name();
    }
    EXPECT_EQ(r.final_hypothesis, (Word{0, 1})) << l->name();
  }
}

TEST(Wrappers, FeedIsFat) {
  auto m = fx::automatic_learner("missing-string");
  Dfa lang = complement_of({1, 0});
  for (auto& l : wrappers(m)) {
    Text t = make_text(TextKind::Canonical, lang);
    SessionReport r = run_session(*l, t, 600, l->default_rate, l->default_slack);
    std::map<Word, int> count;
    for (auto& c : r.cycles) {
      for (auto& w : c.fed) ++count[w];
    }
    for (auto& w : oracle::all_words(2, 3)) {
      if (lang.accepts(w)) EXPECT_GE(count[w], 2) << l->name();
    }
  }
}

TEST(Wrappers, QueueOnSingletonLanguageStabilizes) {
  Alphabet a = Alphabet::plain({"0", "1"});
  auto m = fx::automatic_learner("extensions");
  auto l = fx::queue_wrapper(m);
  Text t = make_text(TextKind::Canonical, singleton(a, Word{1, 0}));
  SessionReport r = run_session(*l, t, 50, l->default_rate, l->default_slack);
  EXPECT_EQ(r.final_hypothesis, (Word{1, 0}));
  EXPECT_EQ(r.last_change, 0u);
}

TEST(Wrappers, ExtensionsSameAsUnwrapped) {
  auto m = fx::automatic_learner("extensions");
  auto fam = fx::extensions();
  Dfa l = language_of(fam, Word{1});
  Text t0 = make_text(TextKind::Canonical, l);
  Word bare = run_automatic_learner(m, t0, 200).final_hypothesis;
  for (auto& w : wrappers(m)) {
    Text t = make_text(TextKind::Canonical, l);
    EXPECT_EQ(run_session(*w, t, 200, w->default_rate, w->default_slack).final_hypothesis, bare);
  }
}

TEST(ArchiveScan, ReferenceExamples) {
  auto fam = fx::thm35();
  const Alphabet& i = fam.index_alphabet();
  fx::ArchiveScanLearner l;
  for (auto [target, expect] : {std::pair{"011", "011"}, {"010", "010"}, {"", ""}}) {
    Text t = make_text(TextKind::Canonical, language_of(fam, i.parse(target)));
    SessionReport r = run_session(l, t, 400, l.default_rate, l.default_slack);
    EXPECT_EQ(i.format(r.final_hypothesis), expect);
    EXPECT_TRUE(r.budgets_clean);
  }
}

TEST(ArchiveScan, KeepsFirstMarkedWord) {
  fx::ArchiveScanLearner l;
  CycleRecord a, b;
  l.cycle(Word{0, 2}, a);
  l.cycle(Word{1, 2}, b);
  EXPECT_EQ(b.hypothesis, (Word{0, 0}));
}

TEST(CheckLearns, ExtensionsOnScriptedTexts) {
  auto fam = fx::extensions();
  AutomaticLearnerRunner l(fx::automatic_learner("extensions"));
  std::vector<Word> targets = oracle::all_words(2, 2);
  LearnTable t = check_learns(l, fam, targets, TextKind::Scripted, 200, l.default_rate, l.default_slack, 0,
                              {Word{1, 1, 1}, Word{0, 1, 1, 0}, Word{0, 0}});
  EXPECT_TRUE(t.pass());
}

TEST(CheckLearns, WrongHypothesisAlphabetRejected) {
  fx::ArchiveScanLearner l;
  EXPECT_THROW(check_learns(l, fx::intervals(), {}, TextKind::Canonical, 10, 4, 1), LearningError);
}

TEST(Budgets, RecomputedFromRawRecords) {
  auto m = fx::automatic_learner("missing-string");
  auto fam = fx::complement_singleton();
  for (auto& l : wrappers(m)) {
    LearnTable t = check_learns(*l, fam, oracle::all_words(2, 2), TextKind::Canonical, 300, l->default_rate,
                                l->default_slack);
    for (auto& row : t.rows) {
      std::size_t n = 0;
      for (auto& c : row.session.cycles) {
        n = std::max(n, c.datum.size());
        std::size_t steps = 0, mem = 0;
        for (auto& [d, s] : c.device_steps) steps += s;
        for (auto& w : c.scratch) mem = std::max(mem, w.size());
        ASSERT_LE(steps, l->default_rate * (n + 1)) << l->name();
        ASSERT_LE(mem, n + l->default_slack) << l->name();
      }
    }
  }
}

TEST(Budgets, TightRateIsReported) {
  auto l = fx::two_tape_wrapper(fx::automatic_learner("missing-string"));
  Text t = make_text(TextKind::Canonical, complement_of({0}));
  SessionReport r = run_session(*l, t, 50, 1, 2);
  EXPECT_FALSE(r.budgets_clean);
}
