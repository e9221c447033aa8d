#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "familial/huber_path.hpp"
#include "familial/random.hpp"
#include "familial/weighted_stats.hpp"

namespace familial {

inline constexpr std::uint64_t kDefaultSeed = 12345;
inline constexpr std::size_t kDefaultBootstraps = 1000;

// Null set M0 (a closed interval; a point null has lo == hi, one-sided nulls
// use an infinite endpoint) plus an optional restriction of the lambda axis.
struct NullSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<LambdaRange> lambda_range;

  static NullSpec point(double mu0, std::optional<LambdaRange> range = std::nullopt);
  static NullSpec interval(double lo, double hi, std::optional<LambdaRange> range = std::nullopt);

  bool is_point() const noexcept { return lo == hi; }
  // Same null reflected through zero (used by the two-sample antisymmetry).
  NullSpec negated() const;
  void validate() const;
};

// Losses for accepting H0, accepting H1, or staying indeterminate, under each
// true hypothesis. Defaults to the 0/20/20/0/1/1 matrix that accepts a
// hypothesis once its posterior probability exceeds 0.95.
struct LossMatrix {
  double h0_given_h0 = 0.0;
  double h0_given_h1 = 20.0;
  double h1_given_h0 = 20.0;
  double h1_given_h1 = 0.0;
  double indeterminate_given_h0 = 1.0;
  double indeterminate_given_h1 = 1.0;

  void validate() const;
};

enum class Decision { kAcceptH0, kAcceptH1, kIndeterminate };

std::string_view to_string(Decision d) noexcept;

struct ExpectedLoss {
  double accept_h0 = 0.0;
  double accept_h1 = 0.0;
  double indeterminate = 0.0;
};

struct PosteriorProbabilities {
  double p_h0 = 0.0;
  double p_h1 = 0.0;
};

struct TestResult {
  double p_h0 = 0.0;
  double p_h1 = 0.0;
  ExpectedLoss expected_loss;
  Decision decision = Decision::kIndeterminate;
  std::size_t b_count = 0;
  std::uint64_t seed = 0;
};

struct BootstrapConfig {
  std::size_t b_count = kDefaultBootstraps;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  ScaleRule scale = ScaleRule::kMad;
};

// B posterior draws of the Huber family, each path already in scale-free
// lambda units.
class PosteriorFamily {
 public:
  PosteriorFamily(std::vector<HuberPath> paths, std::uint64_t seed);

  const std::vector<HuberPath>& paths() const noexcept { return paths_; }
  std::size_t b_count() const noexcept { return paths_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }

  friend bool operator==(const PosteriorFamily&, const PosteriorFamily&) = default;

 private:
  std::vector<HuberPath> paths_;
  std::uint64_t seed_ = 0;
};

// Fits the unit-scale path and rescales its lambda axis by the sample's own
// scale. A sample whose mass sits on one value gives a constant path.
HuberPath fit_scaled_path(const WeightedSample& sample, ScaleRule rule = ScaleRule::kMad);

// One posterior draw per replicate b; replicate b reads only the substream
// derived from (seed, b, stream_id), so results do not depend on threads.
PosteriorFamily bootstrap_family(std::span<const double> data, const BootstrapConfig& config,
                                 std::uint64_t stream_id = 0);

// Fraction of paths with some lambda (in the null's lambda range) whose
// center lies in the null set.
PosteriorProbabilities estimate_posterior(const PosteriorFamily& family, const NullSpec& null);

// Same estimate on the replicate-paired difference paths x_b - y_b.
PosteriorProbabilities estimate_difference_posterior(const PosteriorFamily& family_x,
                                                     const PosteriorFamily& family_y,
                                                     const NullSpec& null);

// Builds p_h0 = count / B and its complement.
PosteriorProbabilities posterior_from_count(std::size_t count, std::size_t b_count);

// Minimum posterior expected loss; exact ties go to kIndeterminate.
std::pair<Decision, ExpectedLoss> decide(const PosteriorProbabilities& p, const LossMatrix& loss = {});

TestResult one_sample_test(std::span<const double> data, const NullSpec& null,
                           const BootstrapConfig& config = {}, const LossMatrix& loss = {});

// One-sample test on the differences x_i - y_i.
TestResult paired_test(std::span<const double> x, std::span<const double> y, const NullSpec& null,
                       const BootstrapConfig& config = {}, const LossMatrix& loss = {});

// Families of x and y drawn with independent weights (streams 1 and 2 of each
// replicate), then compared center-by-center.
std::pair<PosteriorFamily, PosteriorFamily> independent_families(std::span<const double> x,
                                                                 std::span<const double> y,
                                                                 const BootstrapConfig& config);

TestResult independent_test(std::span<const double> x, std::span<const double> y,
                            const NullSpec& null, const BootstrapConfig& config = {},
                            const LossMatrix& loss = {});

}  // namespace familial
