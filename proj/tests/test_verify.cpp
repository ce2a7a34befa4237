#include "qsemi/verify.hpp"

#include <gtest/gtest.h>

using namespace qsemi;

class Suites : public ::testing::TestWithParam<std::string> {};

TEST_P(Suites, PassWithDefaults)
{
  VerifyOptions opt;
  opt.trials = 10;
  const Report rep = run_suite(GetParam(), opt);
  EXPECT_FALSE(rep.items.empty());
  EXPECT_TRUE(rep.pass()) << rep.text();
}

INSTANTIATE_TEST_SUITE_P(Each, Suites,
                         ::testing::Values("lemma1", "prop1", "invariance", "reduction", "dz", "counterexample"));

TEST(RunSuite, UnknownName) { EXPECT_THROW(run_suite("nonsense"), UnknownSuite); }

TEST(RunSuite, Prop1KBounds)
{
  VerifyOptions opt;
  opt.k = 5;
  EXPECT_THROW(run_suite("prop1", opt), std::out_of_range);
  opt.k = 1;
  EXPECT_TRUE(run_suite("prop1", opt).pass());
}

TEST(RunSuite, TextIsReproducible)
{
  const Report a = run_suite("lemma1"), b = run_suite("lemma1");
  EXPECT_EQ(a.text(), b.text());
  EXPECT_EQ(a.text().rfind("verify lemma1 --k 3 --trials 20 --seed ", 0), 0u);
  EXPECT_NE(a.text().find("status: pass"), std::string::npos);
  EXPECT_EQ(a.text().find("time:"), std::string::npos);
  EXPECT_NE(a.text(true).find("time:"), std::string::npos);
}

TEST(Report, FailureShowsBothSides)
{
  Report rep;
  rep.command = "x";
  rep.add("same", "1", "1");
  rep.add("differ", Polynomial(2), Polynomial(3));
  EXPECT_FALSE(rep.pass());
  EXPECT_EQ(rep.text(), "x\n  PASS  same\n  FAIL  differ\n        expected: 2\n        actual:   3\nstatus: fail\n");
  const auto j = rep.json();
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["items"][1]["actual"], "3");
  EXPECT_FALSE(j.contains("timing"));
}

TEST(Report, CheckCarriesFailureText)
{
  Report rep;
  rep.check("ok", true);
  rep.check("bad", false, ">= 2", "1");
  EXPECT_TRUE(rep.items[0].equal);
  EXPECT_EQ(rep.items[1].actual, "1");
  EXPECT_FALSE(rep.pass());
}
