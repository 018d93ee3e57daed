#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(AUTOLIN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

}  // namespace

TEST(Cli, EvalPrintsOutputWord) {
  CliRun r = cli("eval --function fixture:exchange --input 012");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(trim(r.out), "210");
}

TEST(Cli, VerifyCompileSucceeds) {
  CliRun r = cli("verify-compile --function fixture:delete-first-0 --maxlen 5");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, CompileThenRun) {
  ASSERT_EQ(cli("compile --function fixture:exchange --out cli_exchange_tm.json").code, 0);
  CliRun r = cli("run-tm --machine cli_exchange_tm.json --input 0011");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["outcome"], "accepted");
}

TEST(Cli, ExtractRejectsQuadraticMachine) {
  EXPECT_EQ(cli("extract --machine machine:zigzag-identity").code, 1);
  EXPECT_EQ(cli("extract --machine machine:sweep-identity").code, 0);
}

TEST(Cli, CheckFunctionVerdicts) {
  EXPECT_EQ(cli("check-function --relation fixture:exchange").code, 0);
  EXPECT_EQ(cli("check-function --relation fixture:equal-length").code, 1);
}

TEST(Cli, FamilyScanOnGoldIsNegative) {
  EXPECT_EQ(cli("family scan --family family:gold --index-len 1 --bmax 5").code, 1);
  EXPECT_EQ(cli("family scan --family family:extensions --index-len 2 --bmax 4").code, 0);
}

TEST(Cli, LearnTwoTape) {
  CliRun r = cli("learn --learner twotape:missing-string --target 11 --cycles 300");
  EXPECT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_TRUE(j["correct"].get<bool>());
}

TEST(Cli, FixturesListAndDump) {
  CliRun r = cli("fixtures list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("family:thm35"), std::string::npos);
  EXPECT_NE(r.out.find("learner:archive-scan"), std::string::npos);
  EXPECT_EQ(cli("fixtures dump family:gold").code, 0);
  EXPECT_EQ(cli("fixtures dump family:nope").code, 2);
}

TEST(Cli, UsageAndFormatErrors) {
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("eval --function fixture:exchange").code, 2);
  std::ofstream("cli_bad.json") << "{ not json";
  EXPECT_EQ(cli("eval --function cli_bad.json --input 0").code, 2);
  EXPECT_EQ(cli("eval --function fixture:exchange --input 9").code, 2);
}
