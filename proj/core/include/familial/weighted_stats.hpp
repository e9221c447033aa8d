#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace familial {

// Observations with probability weights. The constructor enforces equal
// lengths, n >= 1, finite values, nonnegative weights summing to one within
// 1e-12.
class WeightedSample {
 public:
  WeightedSample(std::vector<double> values, std::vector<double> weights);

  // Equal weights 1/n.
  static WeightedSample uniform(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

double weighted_mean(const WeightedSample& sample);

// Lower weighted median: the smallest order statistic whose cumulative weight
// reaches one half.
double weighted_median(const WeightedSample& sample);

// Square root of the weighted second central moment (no bias correction).
double weighted_sd(const WeightedSample& sample);

enum class ScaleRule { kMad, kStandardDeviation };

struct ScaleEstimate {
  double value = 0.0;     // scale to use for the lambda axis
  double raw_mad = 0.0;   // weighted MAD before any fallback
  bool used_fallback = false;
  bool degenerate = false;  // all weighted mass on one value; value == 0
};

// Weighted median absolute deviation about the weighted median, with no
// consistency constant. A zero MAD falls back to weighted_sd(); when that is
// also zero the sample is flagged degenerate.
ScaleEstimate weighted_mad(const WeightedSample& sample);

// Scale under the requested rule; kStandardDeviation skips the MAD entirely.
ScaleEstimate scale_estimate(const WeightedSample& sample, ScaleRule rule);

// Huber function: z^2/2 inside [-lambda, lambda], lambda|z| - lambda^2/2 outside.
double huber_loss(double z, double lambda);

// Sum_i w_i * huber_loss(x_i - mu, lambda).
double huber_objective(const WeightedSample& sample, double mu, double lambda);

// Throws std::invalid_argument when any value is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

}  // namespace familial
