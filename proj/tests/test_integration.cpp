// Repeated-sampling checks of the end-to-end test. Each run uses its own data
// and bootstrap seed.

#include <gtest/gtest.h>

#include <cmath>

#include "familial/familial_test.hpp"
#include "familial/sim_harness.hpp"

using namespace familial;

TEST(Integration, NormalDataRarelyAcceptsAlternative) {
  const int runs = 200;
  int h1 = 0;
  for (int r = 0; r < runs; ++r) {
    Stream s = Stream::substream(501, r, 0);
    const auto x = sample_dist(DistSpec::normal(0, 1), 200, s);
    h1 += one_sample_test(x, NullSpec::point(0.0), {1000, derive_seed(501, r, 1), 1}).decision ==
          Decision::kAcceptH1;
  }
  EXPECT_GE(runs - h1, 0.95 * runs) << h1 << " of " << runs << " runs accepted H1";
}

TEST(Integration, SkewedPairedDifferencesAcceptAlternative) {
  const int runs = 200;
  int h1 = 0;
  for (int r = 0; r < runs; ++r) {
    Stream s = Stream::substream(502, r, 0);
    // Left-skewed differences with median -25.
    auto e = sample_dist(DistSpec::exponential(1.0), 50, s);
    std::vector<double> x(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
      y[i] = 60.0 + 5.0 * s.normal();
      x[i] = y[i] - 25.0 - 10.0 * (e[i] - std::log(2.0));
    }
    h1 += paired_test(x, y, NullSpec::point(0.0), {1000, derive_seed(502, r, 1), 1}).decision ==
          Decision::kAcceptH1;
  }
  EXPECT_GE(h1, 0.9 * runs);
}

TEST(Integration, ExponentialPairInsideFamilialNull) {
  Scenario sc;
  sc.design = Design::kIndependent;
  sc.dist_x = DistSpec::exponential(1.0);
  sc.dist_y = DistSpec::exponential(2.0);
  sc.mu0_grid = {0.35};
  sc.reps = 200;
  sc.b_count = 1000;
  sc.seed = 503;
  const RejectionTable t = rejection_curve(sc);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_LE(t[0].rejection_frequency, 0.05);
}
