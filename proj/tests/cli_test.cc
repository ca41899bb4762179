#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rlfgen/cli.h"
#include "rlfgen/parser.h"
#include "test_support.h"

namespace rlfgen {
namespace {

namespace fs = std::filesystem;
using test::P;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rlfgen_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  std::string example1() { return write("eg1.json", R"({"vars": ["x", "y"], "field": {"x": "-x", "y": "y"}})"); }

  std::string paper_system() {
    return write("eg51.json", R"({
      "vars": ["x", "y"],
      "field": {"x": "-x + y^2", "y": "-x*y"},
      "template": "x^2 + a*y^2",
      "params": ["a"],
      "config": {"mode": "grid", "grid": ["a:-2..2:1/2"], "radii": ["1"]}
    })");
  }

  fs::path dir_;
};

TEST_F(CliTest, LieOrders) {
  const std::string sys = example1();
  const std::vector<std::string> want{"x + y^2", "-x + 2*y^2", "x + 4*y^2", "-x + 8*y^2"};
  for (int k = 0; k <= 3; ++k) {
    const CliRun r = run({"lie", "--system", sys, "--poly", "x+y^2", "--order", std::to_string(k)});
    EXPECT_EQ(r.code, kExitSuccess) << r.err;
    EXPECT_EQ(r.out, want[k] + "\n");
  }
  const CliRun j = run({"lie", "--system", sys, "--poly", "x+y^2", "--order", "3", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["lie"], "-x + 8*y^2");
}

TEST_F(CliTest, RankAndBound) {
  const std::string sys = example1();
  EXPECT_EQ(run({"rank", "--system", sys, "--poly", "x+y^2", "--at", "0,0"}).out, "∞\n");
  EXPECT_EQ(run({"rank", "--system", sys, "--poly", "x+y^2", "--at", "1,1"}).out, "1\n");
  EXPECT_EQ(run({"rank", "--system", sys, "--poly", "x+y^2", "--at", "2,1"}).out, "2\n");
  EXPECT_EQ(run({"rank", "--system", sys, "--poly", "x+y^2", "--at", "2,1", "--bound", "2"}).out, "2\n");
  const CliRun nb = run({"nbound", "--system", sys, "--poly", "x+y^2"});
  EXPECT_EQ(nb.code, kExitSuccess);
  EXPECT_EQ(nb.out, "2\n");
}

TEST_F(CliTest, PhiPrintsFormulas) {
  const CliRun r = run({"phi", "--system", paper_system(), "--order", "1"});
  EXPECT_EQ(r.code, kExitSuccess) << r.err;
  EXPECT_NE(r.out.find("phi1"), std::string::npos) << r.out;
}

TEST_F(CliTest, FindAndCheckRoundTrip) {
  const std::string cert = (dir_ / "cert.json").string();
  const CliRun f = run({"find", "--system", paper_system(), "--mode", "grid", "--grid", "a:-2..2:1/2", "--radius", "1",
                     "--out", cert});
  ASSERT_EQ(f.code, kExitSuccess) << f.out << f.err;
  EXPECT_NE(f.out.find("a = 1\n"), std::string::npos) << f.out;
  EXPECT_NE(f.out.find("iteration: 3\n"), std::string::npos) << f.out;
  const CliRun c = run({"check", "--system", paper_system(), "--certificate", cert});
  EXPECT_EQ(c.code, kExitSuccess) << c.out << c.err;
  EXPECT_EQ(c.out.substr(0, 6), "valid\n");

  auto j = nlohmann::json::parse(std::ifstream(cert));
  j["witness"]["a"] = "-1";
  const std::string bad = write("bad.json", j.dump());
  const CliRun b = run({"check", "--system", paper_system(), "--certificate", bad});
  EXPECT_EQ(b.code, kExitNegative) << b.out;
}

TEST_F(CliTest, FindNegativeExitCode) {
  const std::string sys = write("quad.json", R"({
    "vars": ["x", "y"],
    "field": {"x": "-x + y^2", "y": "-x*y"},
    "template": "x^2 + a*x*y + b*y^2",
    "params": ["a", "b"],
    "config": {"mode": "parametric", "whole_space": true, "max_order": 1}
  })");
  const CliRun r = run({"find", "--system", sys});
  EXPECT_EQ(r.code, kExitNegative) << r.out << r.err;
  EXPECT_EQ(r.out.substr(0, 17), "none-for-template") << r.out;
}

TEST_F(CliTest, FindUnknownExitCode) {
  // A grid that never survives is exhausted, which is not a proof of absence.
  const CliRun r = run({"find", "--system", paper_system(), "--grid", "a:-2..-1:1"});
  EXPECT_EQ(r.code, kExitUnknown) << r.out << r.err;
}

TEST_F(CliTest, SimulateWritesCsv) {
  const std::string sys = example1();
  const std::string csv = (dir_ / "t.csv").string();
  const CliRun r = run({"simulate", "--system", sys, "--at", "1,0", "--step", "0.5", "--horizon", "1", "--out", csv});
  EXPECT_EQ(r.code, kExitSuccess) << r.err;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x,y");
  const CliRun s = run({"simulate", "--system", sys, "--at", "0.5,-1/4", "--step", "0.5", "--horizon", "1"});
  EXPECT_EQ(s.code, kExitSuccess) << s.err;
}

TEST_F(CliTest, UsageErrors) {
  const std::string sys = example1();
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"lie", "--poly", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"lie", "--system", (dir_ / "missing.json").string(), "--poly", "x"}).code, kExitUsage);
  const CliRun bad = run({"lie", "--system", sys, "--poly", "x + * y"});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("column"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"lie", "--system", sys, "--poly", "z"}).code, kExitUsage);
  EXPECT_EQ(run({"simulate", "--system", sys, "--at", "1,0", "--step", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"find", "--system", sys}).code, kExitUsage);
}

TEST(ParseSystemTest, AcceptsFullDefinition) {
  const SystemDefinition s = parse_system(R"({
    "vars": ["x", "y"],
    "field": {"y": "-x*y", "x": "-x + y^2"},
    "template": "x^2 + a*y^2",
    "params": ["a"],
    "config": {"mode": "parametric", "radius": "1/2", "max_order": 2, "budget_ms": 500, "seed": 7}
  })");
  EXPECT_EQ(s.field.component(0), P("-x + y^2", {"x", "y"}));
  ASSERT_TRUE(s.templ.has_value());
  EXPECT_EQ(s.templ->params().size(), 1u);
  EXPECT_EQ(s.config.mode, SearchMode::kParametric);
  EXPECT_EQ(s.config.fixed_radius, test::Q(1, 2));
  EXPECT_EQ(s.config.max_order, 2u);
  EXPECT_EQ(s.config.falsifier.seed, 7u);
}

TEST(ParseSystemTest, RejectsMalformedDefinitions) {
  const std::vector<std::string> bad{
      "not json",
      "[]",
      R"({"field": {"x": "x"}})",
      R"({"vars": [], "field": {}})",
      R"({"vars": ["x", "x"], "field": {"x": "-x"}})",
      R"({"vars": ["x", "y"], "field": {"x": "-x"}})",
      R"({"vars": ["x"], "field": {"x": "-x", "y": "y"}})",
      R"({"vars": ["x"], "field": {"x": "-z"}})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "params": ["a"]})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "template": "b*x^2", "params": ["a"]})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "extra": 1})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "config": {"colour": "red"}})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "config": {"mode": "bogus"}})",
      R"({"vars": ["x"], "field": {"x": "-x"}, "config": {"max_order": -1}})",
  };
  for (const auto& text : bad) EXPECT_THROW(parse_system(text), Error) << text;
}

TEST(ParserTest, Examples) {
  const std::vector<std::string> axy{"a", "x", "y"};
  EXPECT_EQ(parse_poly("x^2 + a*y^2", axy).to_string(), "a*y^2 + x^2");
  EXPECT_EQ(parse_poly("-x + y^2", {"x", "y"}).to_string(), "-x + y^2");
  EXPECT_TRUE(parse_poly("1/2*x - 1/2*x", {"x"}).is_zero());
  EXPECT_EQ(parse_poly("-(x - 1)^2", {"x"}), parse_poly("-x^2 + 2*x - 1", {"x"}));
  EXPECT_EQ(parse_poly("--x", {"x"}), parse_poly("x", {"x"}));
  EXPECT_EQ(parse_poly("6/4", {"x"}), parse_poly("3/2", {"x"}));
}

TEST(ParserTest, ErrorsCarryPositions) {
  struct Case {
    std::string text;
    size_t column;
  };
  const std::vector<Case> cases{
      {"x +", 4}, {"x ^ 0", 5}, {"2 x", 3}, {"x + z", 5}, {"(x", 3}, {"x / 2", 3}, {"1/0", 3}, {"x^-1", 3},
  };
  for (const auto& c : cases) {
    try {
      parse_poly(c.text, {"x"});
      ADD_FAILURE() << "accepted '" << c.text << "'";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 1u) << c.text;
      EXPECT_EQ(e.column(), c.column) << c.text << ": " << e.what();
    }
  }
  try {
    parse_poly("x +\n  * 2", {"x"});
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(ParserTest, RoundTripsRandomPolynomials) {
  std::mt19937_64 rng(2024);
  const Ring ring(std::vector<std::string>{"a", "b", "x", "y"});
  for (int trial = 0; trial < 500; ++trial) {
    const Polynomial p = test::random_polynomial(rng, ring, 5, 6, 40, 9);
    ASSERT_EQ(parse_poly(p.to_string(), ring), p) << p.to_string();
  }
}

TEST(ParserTest, FuzzNeverCrashes) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "xy01239/+-*^() \n\tq.";
  std::uniform_int_distribution<int> len(0, 24);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::bernoulli_distribution raw(0.2);
  int accepted = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::string text;
    for (int i = len(rng); i > 0; --i) text += raw(rng) ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
    try {
      parse_poly(text, {"x", "y"});
      ++accepted;
    } catch (const ParseError& e) {
      EXPECT_GE(e.line(), 1u);
      EXPECT_GE(e.column(), 1u);
    } catch (const Error&) {
    }
  }
  EXPECT_GT(accepted, 0);
}

}  // namespace
}  // namespace rlfgen
