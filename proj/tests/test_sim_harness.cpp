#include <gtest/gtest.h>

#include <cmath>

#include "familial/sim_harness.hpp"

using namespace familial;

namespace {

std::pair<double, double> moments(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, s / static_cast<double>(v.size() - 1)};
}

}  // namespace

TEST(Samplers, MomentsMatchDistributions) {
  struct Case {
    DistSpec spec;
    double mean;
    double var;
  };
  const double ln_mean = std::exp(0.125);
  const Case cases[] = {
      {DistSpec::normal(0.0, 1.0), 0.0, 1.0},
      {DistSpec::normal(-2.0, 3.0), -2.0, 9.0},
      {DistSpec::exponential(1.0), 1.0, 1.0},
      {DistSpec::exponential(2.0), 0.5, 0.25},
      {DistSpec::lognormal(0.0, 0.5), ln_mean, (std::exp(0.25) - 1.0) * std::exp(0.25)},
      {DistSpec::poisson(1.0), 1.0, 1.0},
      {DistSpec::poisson(1.2), 1.2, 1.2},
      {DistSpec::poisson(25.0), 25.0, 25.0},
  };
  std::uint64_t seed = 100;
  for (const Case& c : cases) {
    Stream s(seed++);
    const auto [m, v] = moments(sample_dist(c.spec, 1000000, s));
    const double sd = std::sqrt(c.var);
    EXPECT_NEAR(m, c.mean, 5.0 * sd / 1000.0) << c.spec.describe();
    EXPECT_NEAR(v, c.var, 0.02 * c.var) << c.spec.describe();
  }
}

TEST(Samplers, SupportAndDeterminism) {
  Stream s(3);
  for (double v : sample_dist(DistSpec::poisson(1.0), 20000, s)) {
    EXPECT_GE(v, 0.0);
    EXPECT_EQ(v, std::floor(v));
  }
  for (double v : sample_dist(DistSpec::exponential(3.0), 20000, s)) EXPECT_GT(v, 0.0);
  for (double v : sample_dist(DistSpec::lognormal(0.0, 2.0), 20000, s)) EXPECT_GT(v, 0.0);
  Stream a(8), b(8);
  EXPECT_EQ(sample_dist(DistSpec::normal(0, 1), 100, a), sample_dist(DistSpec::normal(0, 1), 100, b));
}

TEST(DistSpec, ParseAndValidate) {
  const DistSpec n = DistSpec::parse("normal:0,1");
  EXPECT_EQ(n.kind, DistKind::kNormal);
  EXPECT_EQ(n.b, 1.0);
  EXPECT_EQ(DistSpec::parse("exponential:2").a, 2.0);
  EXPECT_EQ(DistSpec::parse("lognormal:0,0.5").b, 0.5);
  EXPECT_EQ(DistSpec::parse("poisson:1.2").kind, DistKind::kPoisson);
  for (const char* bad : {"normal", "normal:0", "normal:0,-1", "exponential:0", "poisson:31", "cauchy:0,1",
                          "lognormal:0,x", "poisson:-1"}) {
    EXPECT_THROW(DistSpec::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(RejectionCurve, SingleRepGivesIndicators) {
  Scenario sc;
  sc.dist_x = DistSpec::normal(0, 1);
  sc.n_x = 30;
  sc.mu0_grid = {-1.0, 0.0, 1.0};
  sc.reps = 1;
  sc.b_count = 100;
  sc.tests = {SimTest::kFamilial, SimTest::kT, SimTest::kSign};
  const RejectionTable t = rejection_curve(sc);
  ASSERT_EQ(t.size(), 9u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_TRUE(t[i].rejection_frequency == 0.0 || t[i].rejection_frequency == 1.0);
    EXPECT_EQ(t[i].reps, 1u);
    EXPECT_EQ(t[i].mu0, sc.mu0_grid[i / 3]);
    EXPECT_EQ(t[i].test, sc.tests[i % 3]);
  }
}

TEST(RejectionCurve, ThreadIndependentAndStderr) {
  Scenario sc;
  sc.design = Design::kIndependent;
  sc.dist_x = DistSpec::exponential(1.0);
  sc.dist_y = DistSpec::exponential(2.0);
  sc.n_x = 40;
  sc.n_y = 30;
  sc.mu0_grid = {0.0, 0.35, 0.8};
  sc.reps = 12;
  sc.b_count = 80;
  sc.tests = {SimTest::kFamilial, SimTest::kT, SimTest::kMood};
  const RejectionTable a = rejection_curve(sc);
  sc.threads = 4;
  const RejectionTable b = rejection_curve(sc);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].rejection_frequency, b[i].rejection_frequency);
    const double p = a[i].rejection_frequency;
    EXPECT_DOUBLE_EQ(a[i].mc_stderr, std::sqrt(p * (1.0 - p) / 12.0));
  }
}

TEST(Scenario, Validation) {
  Scenario sc;
  sc.mu0_grid = {0.0};
  sc.tests = {SimTest::kMood};
  EXPECT_THROW(rejection_curve(sc), std::invalid_argument);
  sc.tests = {SimTest::kFamilial};
  sc.mu0_grid.clear();
  EXPECT_THROW(rejection_curve(sc), std::invalid_argument);
  sc.mu0_grid = {0.0};
  sc.design = Design::kIndependent;
  EXPECT_THROW(rejection_curve(sc), std::invalid_argument);
}

TEST(NullBand, PopulationFamilies) {
  const Interval normal = familial_null_band(DistSpec::normal(0, 1));
  EXPECT_NEAR(normal.low, 0.0, 5e-3);
  EXPECT_NEAR(normal.high, 0.0, 5e-3);

  // Exponential(1): the family runs from the median ln 2 to the mean 1.
  const Interval expo = familial_null_band(DistSpec::exponential(1.0));
  EXPECT_NEAR(expo.low, std::log(2.0), 5e-3);
  EXPECT_NEAR(expo.high, 1.0, 5e-3);

  // Poisson(1) has mean = median = 1, yet the family leaves that point.
  const Interval pois = familial_null_band(DistSpec::poisson(1.0));
  EXPECT_LE(pois.low, pois.high);
  EXPECT_TRUE(pois.low < 1.0 - 1e-3 || pois.high > 1.0 + 1e-3) << pois.low << " " << pois.high;

  const Interval diff = familial_null_band(DistSpec::exponential(1.0), DistSpec::exponential(2.0));
  EXPECT_LE(diff.low, 0.35);
  EXPECT_GE(diff.high, 0.35);
  EXPECT_NEAR(diff.low, std::log(2.0) / 2.0, 5e-3);
  EXPECT_NEAR(diff.high, 0.5, 5e-3);
}
