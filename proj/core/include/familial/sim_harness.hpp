#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "familial/familial_test.hpp"
#include "familial/random.hpp"

namespace familial {

enum class DistKind { kNormal, kExponential, kLognormal, kPoisson };

// Normal(mean=a, sd=b), Exponential(rate=a), Lognormal(mu=a, sigma=b),
// Poisson(mean=a) with mean <= 30.
struct DistSpec {
  DistKind kind = DistKind::kNormal;
  double a = 0.0;
  double b = 1.0;

  static DistSpec normal(double mean, double sd) { return {DistKind::kNormal, mean, sd}; }
  static DistSpec exponential(double rate) { return {DistKind::kExponential, rate, 0.0}; }
  static DistSpec lognormal(double mu, double sigma) { return {DistKind::kLognormal, mu, sigma}; }
  static DistSpec poisson(double mean) { return {DistKind::kPoisson, mean, 0.0}; }

  // Parses "normal:0,1", "exponential:2", "lognormal:0,0.5", "poisson:1.2".
  static DistSpec parse(std::string_view text);

  void validate() const;
  std::string describe() const;
};

inline constexpr double kMaxPoissonMean = 30.0;

std::vector<double> sample_dist(const DistSpec& spec, std::size_t n, Stream& stream);

enum class Design { kOneSample, kIndependent };
// kT is the one-sample t test or, for independent samples, Welch's test.
// kSign applies to one-sample designs, kMood to independent ones.
enum class SimTest { kFamilial, kT, kSign, kMood };

std::string_view to_string(SimTest t) noexcept;

struct Scenario {
  Design design = Design::kOneSample;
  DistSpec dist_x;
  std::optional<DistSpec> dist_y;
  std::size_t n_x = 200;
  std::size_t n_y = 200;
  std::vector<double> mu0_grid;
  std::size_t reps = 200;
  std::size_t b_count = 500;
  std::uint64_t seed = kDefaultSeed;
  std::vector<SimTest> tests{SimTest::kFamilial};
  unsigned threads = 1;
  ScaleRule scale = ScaleRule::kMad;
  LossMatrix loss;
  double alpha = 0.05;

  void validate() const;
};

struct RejectionRow {
  double mu0 = 0.0;
  SimTest test = SimTest::kFamilial;
  double rejection_frequency = 0.0;
  std::size_t reps = 0;
  double mc_stderr = 0.0;
};

using RejectionTable = std::vector<RejectionRow>;

// Every (rep, mu0) cell draws fresh data from the substream (seed, rep, mu0
// index) and runs each selected test; the familial test rejects when it
// accepts H1, the frequentist tests when p < alpha. Rows are ordered by mu0
// then by the scenario's test order.
RejectionTable rejection_curve(const Scenario& scenario);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline constexpr std::size_t kBandSampleSize = std::size_t{1} << 20;
inline constexpr std::uint64_t kBandSeed = 20210701;

// Numerical stand-in for the population Huber family: range of the scaled path
// fitted to a large equal-weight sample.
Interval familial_null_band(const DistSpec& spec, std::size_t n = kBandSampleSize,
                            std::uint64_t seed = kBandSeed);

// Range of the difference of the two scaled population paths.
Interval familial_null_band(const DistSpec& x, const DistSpec& y, std::size_t n = kBandSampleSize,
                            std::uint64_t seed = kBandSeed);

}  // namespace familial
