#pragma once

#include <optional>
#include <vector>

#include "familial/weighted_stats.hpp"

namespace familial {

struct Knot {
  double lambda = 0.0;
  double center = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

// Closed lambda interval [low, high] with 0 < low <= high.
struct LambdaRange {
  double low = 0.0;
  double high = 0.0;
};

// Image of a path over a lambda set.
struct PathRange {
  double low = 0.0;
  double high = 0.0;

  bool intersects(double lo, double hi) const noexcept { return low <= hi && high >= lo; }
  bool contains(double value) const noexcept { return low <= value && value <= high; }
};

// Continuous piecewise-linear center path lambda -> mu(lambda), stored as
// knots with strictly decreasing lambda. Beyond the first knot the path equals
// the first center (the weighted mean); below the last knot it equals the
// last center (the weighted median).
class HuberPath {
 public:
  explicit HuberPath(std::vector<Knot> knots, double sigma = 1.0);

  static HuberPath constant(double center) { return HuberPath({Knot{0.0, center}}); }

  const std::vector<Knot>& knots() const noexcept { return knots_; }
  double sigma() const noexcept { return sigma_; }
  double leading_lambda() const noexcept { return knots_.front().lambda; }
  double first_center() const noexcept { return knots_.front().center; }
  double last_center() const noexcept { return knots_.back().center; }
  std::size_t size() const noexcept { return knots_.size(); }

  friend bool operator==(const HuberPath&, const HuberPath&) = default;

 private:
  std::vector<Knot> knots_;
  double sigma_ = 1.0;
};

// Exact solution path of argmin_mu sum_i w_i huber(x_i - mu; lambda) over all
// lambda > 0, with unit scale. A constant sample yields the single knot (0, c).
HuberPath fit_path(const WeightedSample& sample);

// Re-expresses a unit-scale path in residual-over-sigma units: knot lambdas are
// divided by sigma so that the result at lambda equals the unit-scale path at
// sigma * lambda. Centers are unchanged.
HuberPath scale_path(const HuberPath& path, double sigma);

double eval_path(const HuberPath& path, double lambda);

// Range of centers over all lambda >= 0, or over the closed restriction.
PathRange path_range(const HuberPath& path, std::optional<LambdaRange> restriction = std::nullopt);

// Pointwise difference path_x(lambda) - path_y(lambda) on the merged knots.
HuberPath diff_path(const HuberPath& path_x, const HuberPath& path_y);

}  // namespace familial
