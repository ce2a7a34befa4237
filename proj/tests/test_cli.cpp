#include "qsemi/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace qsemi;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(QSEMI_SAMPLES) + "/" + name; }

} // namespace

TEST(Cli, RoutesKronecker)
{
  const Result r = run({"routes", sample("kronecker.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(a,~a)  {1:-1, 2:1}\n(a,~a,b,~b)  {1:-2, 2:2}\n(a,~b)  {1:-1, 2:1}\n"
                   "(a,~b,b,~a)  {1:-2, 2:2}\n(b,~b)  {1:-1, 2:1}\n");
}

TEST(Cli, RoutesTriangleWeights)
{
  const Result r = run({"routes", sample("triangle.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(a,b,c)"), std::string::npos);
}

TEST(Cli, RoutesNoArrows)
{
  const Result r = run({"routes", sample("points.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, GensKronecker)
{
  const Result r = run({"gens", sample("kronecker.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "tr(a,~a) = 2*x_a_1_1*x_a_2_2 - 2*x_a_1_2*x_a_2_1\n"
                   "tr(a,~b) = x_a_1_1*x_b_2_2 - x_a_1_2*x_b_2_1 - x_a_2_1*x_b_1_2 + x_a_2_2*x_b_1_1\n"
                   "tr(b,~b) = 2*x_b_1_1*x_b_2_2 - 2*x_b_1_2*x_b_2_1\n");
}

TEST(Cli, GensRejectsOtherDimensions)
{
  const Result r = run({"gens", sample("counterexample.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("(2,...,2)"), std::string::npos);
}

TEST(Cli, DzKronecker)
{
  const Result r = run({"dz", sample("kronecker.json"), sample("kronecker_dz.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("y_1_1^2*y_2_2^2: "), std::string::npos);
  EXPECT_NE(r.out.find("y_1_1*y_1_2*y_2_1*y_2_2: -2*"), std::string::npos);
}

TEST(Cli, ReduceRepeated)
{
  const Result r = run({"reduce", sample("kronecker.json"), "(a,~a,a,~b)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1/2*t_0*t_1\n", 0), 0u);
}

TEST(Cli, ReduceSimpleRoute)
{
  const Result r = run({"reduce", sample("kronecker.json"), "(a,~b)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no reverse pair"), std::string::npos);
}

TEST(Cli, ReduceBadRoute)
{
  const Result r = run({"reduce", sample("kronecker.json"), "(a,b)"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error: "), std::string::npos);
}

TEST(Cli, InputErrors)
{
  Result r = run({"routes", sample("malformed.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 5, column 5"), std::string::npos);
  r = run({"routes", sample("dangling.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/arrows/0/head"), std::string::npos);
  r = run({"routes", sample("missing.json")});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, Usage)
{
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"routes"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"verify", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "prop1", "--k", "9"}).code, 2);
  EXPECT_EQ(run({"verify", "lemma1", "--trials", "0"}).code, 2);
}

TEST(Cli, VerifyText)
{
  const Result r = run({"verify", "lemma1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("status: pass"), std::string::npos);
  EXPECT_EQ(r.out, run({"verify", "lemma1"}).out);
}

TEST(Cli, VerifyJson)
{
  const Result r = run({"verify", "dz", "--json", "--timing"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_GT(j["items"].size(), 3u);
}

TEST(Cli, VerifyWithSeed)
{
  EXPECT_EQ(run({"verify", "prop1", "--k", "2", "--seed", "5"}).code, 0);
}
