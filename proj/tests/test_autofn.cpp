#include <gtest/gtest.h>

#include "autolin/fixtures.hpp"
#include "oracles.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

namespace {

Word w(const Alphabet& a, const std::string& s) { return a.parse(s); }

}  // namespace

TEST(Evaluate, ExchangeSwapsEnds) {
  auto f = fx::exchange();
  const Alphabet& a = f.input_alphabet();
  EXPECT_EQ(evaluate(f, w(a, "012")), w(a, "210"));
  EXPECT_EQ(evaluate(f, w(a, "0")), w(a, "0"));
  EXPECT_EQ(evaluate(f, Word{}), Word{});
}

TEST(Evaluate, DeleteFirstZero) {
  auto f = fx::delete_first_0();
  const Alphabet& a = f.input_alphabet();
  EXPECT_EQ(evaluate(f, w(a, "1001")), w(a, "101"));
  EXPECT_EQ(evaluate(f, w(a, "111")), w(a, "111"));
  EXPECT_EQ(evaluate(f, w(a, "0")), Word{});
}

TEST(Evaluate, AppendHasSlackTwo) {
  auto f = fx::append_ab();
  EXPECT_EQ(f.slack(), 2u);
  EXPECT_EQ(evaluate(f, Word{}), w(f.output_alphabet(), "ab"));
  EXPECT_EQ(fx::identity().slack(), 0u);
}

TEST(Evaluate, AgreesWithGraphMembership) {
  for (auto& e : fx::function_fixtures()) {
    auto f = e.make();
    for (auto& x : oracle::all_words(f.input_alphabet().size(), 4)) {
      auto y = evaluate(f, x);
      ASSERT_TRUE(y) << e.name;
      ASSERT_TRUE(f.relation().contains({x, *y})) << e.name;
      ASSERT_LE(y->size(), x.size() + f.slack());
    }
  }
}

TEST(Functionality, FixturesCertifiedAndBruteForceAgrees) {
  for (auto& e : fx::function_fixtures()) {
    auto f = e.make();
    EXPECT_TRUE(std::holds_alternative<FunctionalityCertificate>(check_functional(f.relation()))) << e.name;
    EXPECT_FALSE(oracle::brute_functionality(f.graph(), 4)) << e.name;
  }
}

TEST(Functionality, EqualLengthCounterexample) {
  auto r = fx::equal_length();
  auto v = check_functional(r);
  auto* x = std::get_if<FunctionalityViolation>(&v);
  ASSERT_TRUE(x);
  EXPECT_NE(x->y, x->y2);
  EXPECT_TRUE(r.contains({x->x, x->y}));
  EXPECT_TRUE(r.contains({x->x, x->y2}));
  EXPECT_EQ(x->x.size(), 1u);
  EXPECT_TRUE(oracle::brute_functionality(r.graph(), 4));
  EXPECT_THROW(AutomaticFunction::certify(r), FunctionalityError);
}

TEST(Functionality, PrefixExtensionCounterexample) {
  auto r = fx::prefix_extension();
  auto v = check_functional(r);
  auto* x = std::get_if<FunctionalityViolation>(&v);
  ASSERT_TRUE(x);
  EXPECT_TRUE(x->x.empty());
  EXPECT_TRUE(r.contains({x->x, x->y}));
  EXPECT_TRUE(r.contains({x->x, x->y2}));
  EXPECT_TRUE(oracle::brute_functionality(r.graph(), 4));
}

TEST(Functionality, RandomRelationsMatchBruteForce) {
  // Random relations restricted to |y| ≤ |x| + 1 are either functional or have
  // a violation that brute force finds within the searched lengths.
  for (int seed = 1; seed <= 20; ++seed) {
    oracle::Rng rng(seed);
    Alphabet s = Alphabet::plain({"0", "1"});
    Alphabet c = Alphabet::convolution({s, s});
    Dfa g = oracle::random_dfa(c, 3, rng, 0.3);
    g = minimize(intersect(g, well_formed_dfa(c)));
    AutomaticRelation r(g);
    auto v = check_functional(r);
    if (auto* x = std::get_if<FunctionalityViolation>(&v)) {
      EXPECT_TRUE(r.contains({x->x, x->y})) << seed;
      EXPECT_TRUE(r.contains({x->x, x->y2})) << seed;
      EXPECT_NE(x->y, x->y2) << seed;
    } else {
      EXPECT_FALSE(oracle::brute_functionality(g, 5)) << seed;
    }
  }
}

TEST(Domain, DeleteFirstZeroIsTotal) {
  auto f = fx::delete_first_0();
  EXPECT_TRUE(equivalent(domain(f), universal(f.input_alphabet())).equal);
}
