#include <gtest/gtest.h>

#include "autolin/compile.hpp"
#include "autolin/crossing.hpp"
#include "autolin/fixtures.hpp"
#include "oracles.hpp"

using namespace autolin;
namespace fx = autolin::fixtures;

class ExtractFixture : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ExtractFixture, RoundTripIsExact) {
  AutomaticFunction f = fx::function_fixtures()[GetParam()].make();
  ExtractReport rep = extract_automatic(compile(f), 4, std::nullopt, 5);
  ASSERT_TRUE(rep.ok) << rep.message;
  ASSERT_TRUE(rep.function);
  EXPECT_TRUE(rep.linear_time.pass);
  EXPECT_EQ(rep.visit_bound, 3u);
  auto eq = equivalent(rep.function->graph(), f.graph());
  EXPECT_TRUE(eq.equal);
  EXPECT_TRUE(rep.mismatches.empty());
  EXPECT_EQ(rep.function->slack(), f.slack());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, ExtractFixture, ::testing::Range<std::size_t>(0, 4));

TEST(Extract, SweepMachineGivesIdentity) {
  ExtractReport rep = extract_automatic(fx::sweep_identity(), 4, std::nullopt, 5);
  ASSERT_TRUE(rep.ok) << rep.message;
  EXPECT_TRUE(equivalent(rep.function->graph(), fx::identity().graph()).equal);
}

TEST(Extract, QuadraticMachineFailsPrecondition) {
  ExtractReport rep = extract_automatic(fx::zigzag_identity(), 4, std::nullopt, 5);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.linear_time.pass);
  EXPECT_NE(rep.message.find("precondition"), std::string::npos);
  EXPECT_FALSE(rep.function);
}

TEST(Extract, StateCapRaisesBlowup) {
  EXPECT_THROW(build_A(normalize_return_to_origin(compile(fx::exchange())), 3, 5), BlowupError);
}

TEST(Extract, ExplicitVisitBoundMatchesMeasured) {
  TuringMachine m = compile(fx::delete_first_0());
  ExtractReport measured = extract_automatic(m, 4, std::nullopt, 4);
  ExtractReport given = extract_automatic(m, 4, 3, 4);
  ASSERT_TRUE(measured.ok && given.ok);
  EXPECT_TRUE(equivalent(measured.function->graph(), given.function->graph()).equal);
}

TEST(LocalComputations, BoundedByVisits) {
  TuringMachine m = normalize_return_to_origin(fx::sweep_identity());
  auto locals = enumerate_local(m, 3);
  EXPECT_FALSE(locals.empty());
  for (auto& l : locals) EXPECT_LE(l.visits.size(), 3u);
}

TEST(Automaton, ExtractedGraphEvaluatesLikeMachine) {
  AutomaticFunction f = fx::exchange();
  TuringMachine m = compile(f);
  ExtractReport rep = extract_automatic(m, 4, std::nullopt, 4);
  ASSERT_TRUE(rep.ok);
  for (auto& x : oracle::all_words(3, 5)) {
    RunResult r = run_deterministic(m, x, 200);
    auto y = evaluate(*rep.function, x);
    ASSERT_TRUE(r.accepted() && y);
    ASSERT_EQ(r.output->size(), y->size());
  }
}
