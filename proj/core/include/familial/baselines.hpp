#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace familial {

enum class BaselineMethod { kOneSampleT, kWelchT, kSign, kMoodMedian };

std::string_view to_string(BaselineMethod m) noexcept;

struct FrequentistResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::optional<double> df;
  BaselineMethod method = BaselineMethod::kOneSampleT;
};

// Student t test of mean == mu0, two-sided.
FrequentistResult one_sample_t(std::span<const double> data, double mu0);

// Welch t test of mean(x) - mean(y) == mu0 with Satterthwaite df, two-sided.
FrequentistResult welch_t(std::span<const double> x, std::span<const double> y, double mu0);

// Exact binomial sign test of median == mu0. Observations equal to mu0 are
// dropped; the statistic is the count above mu0.
FrequentistResult sign_test(std::span<const double> data, double mu0);

// Mood's median test of median(x) - median(y) == mu0: y is shifted by mu0,
// points equal to the pooled median are dropped, and the 2x2 chi-square
// statistic (no continuity correction) is referred to chi-square(1).
FrequentistResult mood_median_test(std::span<const double> x, std::span<const double> y, double mu0);

// P(K <= k) for K ~ Binomial(m, 1/2); exact integer arithmetic for m <= 62.
double binomial_half_cdf(std::size_t k, std::size_t m);

}  // namespace familial
