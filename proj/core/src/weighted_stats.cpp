#include "familial/weighted_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace familial {

namespace {

double lower_weighted_median(std::span<const double> values, std::span<const double> weights) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  double total = 0.0;
  for (std::size_t i : order) total += weights[i];
  const double half = 0.5 * total;
  double cumulative = 0.0;
  for (std::size_t i : order) {
    cumulative += weights[i];
    if (cumulative >= half) return values[i];
  }
  return values[order.back()];
}

}  // namespace

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument(std::string(what) + ": non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

WeightedSample::WeightedSample(std::vector<double> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) throw std::invalid_argument("WeightedSample: empty sample");
  if (values_.size() != weights_.size()) {
    throw std::invalid_argument("WeightedSample: values and weights differ in length");
  }
  require_finite(values_, "WeightedSample values");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("WeightedSample: weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("WeightedSample: weights must sum to one");
  }
}

WeightedSample WeightedSample::uniform(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("WeightedSample: empty sample");
  std::vector<double> weights(values.size(), 1.0 / static_cast<double>(values.size()));
  return WeightedSample(std::move(values), std::move(weights));
}

double weighted_mean(const WeightedSample& sample) {
  const auto& x = sample.values();
  const auto& w = sample.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i];
  return acc;
}

double weighted_median(const WeightedSample& sample) {
  return lower_weighted_median(sample.values(), sample.weights());
}

double weighted_sd(const WeightedSample& sample) {
  const auto& x = sample.values();
  const auto& w = sample.weights();
  const double mean = weighted_mean(sample);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    acc += w[i] * d * d;
  }
  return std::sqrt(acc);
}

ScaleEstimate weighted_mad(const WeightedSample& sample) {
  const auto& x = sample.values();
  const double median = weighted_median(sample);
  std::vector<double> deviations(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) deviations[i] = std::fabs(x[i] - median);

  ScaleEstimate out;
  out.raw_mad = lower_weighted_median(deviations, sample.weights());
  out.value = out.raw_mad;
  if (out.raw_mad > 0.0) return out;

  out.used_fallback = true;
  out.value = weighted_sd(sample);
  out.degenerate = !(out.value > 0.0);
  if (out.degenerate) out.value = 0.0;
  return out;
}

ScaleEstimate scale_estimate(const WeightedSample& sample, ScaleRule rule) {
  if (rule == ScaleRule::kMad) return weighted_mad(sample);
  ScaleEstimate out;
  out.value = weighted_sd(sample);
  out.degenerate = !(out.value > 0.0);
  if (out.degenerate) out.value = 0.0;
  return out;
}

double huber_loss(double z, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("huber_loss: lambda must be positive");
  const double a = std::fabs(z);
  if (a < lambda) return 0.5 * z * z;
  return lambda * a - 0.5 * lambda * lambda;
}

double huber_objective(const WeightedSample& sample, double mu, double lambda) {
  const auto& x = sample.values();
  const auto& w = sample.weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * huber_loss(x[i] - mu, lambda);
  return acc;
}

}  // namespace familial
