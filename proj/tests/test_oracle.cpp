#include <gtest/gtest.h>

#include "corpus.hpp"
#include "vipr/checker.hpp"
#include "vipr/oracle.hpp"

using namespace vipr;
using namespace vipr::oracle;
using vipr::testing::load_fixture;

TEST(Oracle, Ip0IsInfeasible) {
  // The LP relaxation is the triangle with vertices (10/17, -1/17),
  // (-1/5, 7/15) and (12/7, 11/14), which lies inside [-1,2] x [-1,1], so
  // the box covers every candidate integer point.
  const auto pc = load_fixture("cert0.vipr");
  EXPECT_TRUE(std::holds_alternative<Infeasible>(brute_force(pc.problem, BoxBounds::uniform(2, -10, 10))));
}

TEST(Oracle, Forged1OptimumIsTwo) {
  const auto pc = load_fixture("forged1.vipr");
  const Answer a = brute_force(pc.problem, BoxBounds::uniform(2, 0, 1));
  ASSERT_TRUE(std::holds_alternative<Optimal>(a));
  EXPECT_EQ(std::get<Optimal>(a).value, Rational(2));
  EXPECT_EQ(std::get<Optimal>(a).witness, (std::vector<Rational>{1, 1}));
}

TEST(Oracle, Forged2IsInfeasible) {
  const auto pc = load_fixture("forged2.vipr");
  EXPECT_TRUE(std::holds_alternative<Infeasible>(brute_force(pc.problem, BoxBounds::uniform(2, 0, 1))));
}

TEST(Oracle, MinimizationAndFractionalBox) {
  Problem p;
  p.var_names = {"x", "y"};
  p.int_vars = {1, 2};
  p.objective.set(1, Rational(1));
  p.objective.set(2, Rational(-2));
  Constraint c{"c", {}, Sense::Geq, Rational(1, 2)};
  c.lhs.set(1, Rational(1));
  c.lhs.set(2, Rational(1));
  p.constraints = {c};
  const Answer a = brute_force(p, {{Rational(-1, 2), Rational(0)}, {Rational(5, 2), Rational(1)}});
  ASSERT_TRUE(std::holds_alternative<Optimal>(a));
  EXPECT_EQ(std::get<Optimal>(a).value, Rational(-2));
  EXPECT_EQ(std::get<Optimal>(a).witness, (std::vector<Rational>{0, 1}));
}

TEST(Oracle, Errors) {
  auto pc = load_fixture("rounding_min.vipr");
  EXPECT_THROW(brute_force(pc.problem, BoxBounds::uniform(2, 0, 1)), UnsupportedContinuousVariable);
  const auto ip0 = load_fixture("cert0.vipr");
  EXPECT_THROW(brute_force(ip0.problem, BoxBounds::uniform(2, -1000, 1000)), EnumerationTooLarge);
  EXPECT_NO_THROW(brute_force(ip0.problem, BoxBounds::uniform(2, -499, 500)));
}

TEST(Oracle, AgreesWithEveryValidFixture) {
  for (const std::string& path : vipr::testing::corpus_files()) {
    const auto pc = parse_certificate_file(path);
    if (!check_certificate(pc.problem, pc.certificate).valid()) continue;
    if (pc.problem.int_vars.size() != pc.problem.n()) continue;
    const Answer a = brute_force(pc.problem, BoxBounds::uniform(pc.problem.n(), -10, 10));
    if (pc.certificate.infeasible()) {
      EXPECT_TRUE(std::holds_alternative<Infeasible>(a)) << path;
      continue;
    }
    ASSERT_TRUE(std::holds_alternative<Optimal>(a)) << path;
    const auto& range = std::get<RtpRange>(pc.certificate.rtp);
    const Rational& v = std::get<Optimal>(a).value;
    if (range.lower) EXPECT_GE(v, *range.lower) << path;
    if (range.upper) EXPECT_LE(v, *range.upper) << path;
  }
}
