#include "familial/huber_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace familial {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// A point counts as crossed once |x - mu| >= lambda - tol(lambda).
double crossing_tolerance(double lambda) { return 1e-12 * (1.0 + lambda); }

void validate_restriction(const LambdaRange& r) {
  if (!(r.low > 0.0) || !std::isfinite(r.low) || std::isnan(r.high)) {
    throw std::invalid_argument("lambda range: lower bound must be positive and finite");
  }
  if (r.low > r.high) throw std::invalid_argument("lambda range: empty interval (a > b)");
}

}  // namespace

HuberPath::HuberPath(std::vector<Knot> knots, double sigma)
    : knots_(std::move(knots)), sigma_(sigma) {
  if (knots_.empty()) throw std::invalid_argument("HuberPath: no knots");
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("HuberPath: sigma must be positive and finite");
  }
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    const Knot& kn = knots_[k];
    if (!(kn.lambda >= 0.0) || !std::isfinite(kn.lambda) || !std::isfinite(kn.center)) {
      throw std::invalid_argument("HuberPath: knots must be finite with nonnegative lambda");
    }
    if (k > 0 && !(kn.lambda < knots_[k - 1].lambda)) {
      throw std::invalid_argument("HuberPath: knot lambdas must be strictly decreasing");
    }
  }
}

HuberPath fit_path(const WeightedSample& sample) {
  const auto& values = sample.values();
  const auto& weights = sample.weights();
  const std::size_t n = values.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> xs(n);
  std::vector<double> prefix(n + 1, 0.0);  // prefix[k] = weight of the k smallest points
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = values[order[k]];
    prefix[k + 1] = prefix[k] + weights[order[k]];
  }
  if (xs.front() == xs.back()) return HuberPath::constant(xs.front());

  const double median = weighted_median(sample);
  double mu = weighted_mean(sample);
  double lambda = std::max(xs.back() - mu, mu - xs.front());

  std::vector<Knot> knots;
  knots.reserve(n);
  knots.push_back({lambda, mu});

  // Interior set {i : |x_i - mu| < lambda} is the sorted window [lo, hi).
  // It only ever shrinks: crossed points never return to the interior.
  std::size_t lo = 0;
  std::size_t hi = n;
  auto sweep = [&] {
    const double cut = lambda - crossing_tolerance(lambda);
    while (lo < hi && std::fabs(xs[lo] - mu) >= cut) ++lo;
    while (hi > lo && std::fabs(xs[hi - 1] - mu) >= cut) --hi;
  };
  sweep();

  for (std::size_t iter = 1; iter < n && lo < hi; ++iter) {
    const double w_below = prefix[lo];
    const double w_above = prefix[n] - prefix[hi];
    const double w_inside = prefix[hi] - prefix[lo];
    if (!(w_inside > 0.0)) break;  // only massless points remain inside: flat from here
    const double eta = -(w_above - w_below) / w_inside;

    // Step to the next crossing. Along the path the ratio is decreasing in x
    // for points above the median and increasing for points below it, so the
    // minimum sits at a window end or at the median itself (ratio = lambda).
    auto ratio = [&](std::size_t k) {
      const int s = sign_of(xs[k] - median);
      const double denom = 1.0 - s * eta;
      if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
      return (lambda - s * (xs[k] - mu)) / denom;
    };
    const double gamma_low = ratio(lo);
    const double gamma_high = ratio(hi - 1);
    const bool median_inside = xs[lo] <= median && median <= xs[hi - 1];
    double gamma = std::min(gamma_low, gamma_high);
    bool to_median = false;
    if (median_inside && lambda <= gamma) {
      gamma = lambda;
      to_median = true;
    }
    gamma = std::clamp(gamma, 0.0, lambda);

    const double next_lambda = to_median ? 0.0 : lambda - gamma;
    const double next_mu = to_median ? median : mu + gamma * eta;
    if (next_lambda < lambda) {
      lambda = next_lambda;
      mu = next_mu;
      knots.push_back({lambda, mu});
    }
    if (to_median) break;

    // Ties in the step-size minimum cross together.
    const double tie = gamma + 1e-12 * (1.0 + gamma);
    const bool low_crosses = gamma_low <= tie;
    const bool high_crosses = gamma_high <= tie;
    if (low_crosses) {
      const double v = xs[lo];
      while (lo < hi && xs[lo] == v) ++lo;
    }
    if (high_crosses) {
      const double v = xs[hi - 1];
      while (hi > lo && xs[hi - 1] == v) --hi;
    }
    sweep();
  }

  return HuberPath(std::move(knots));
}

HuberPath scale_path(const HuberPath& path, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("scale_path: sigma must be positive and finite");
  }
  std::vector<Knot> knots = path.knots();
  for (Knot& k : knots) k.lambda /= sigma;
  return HuberPath(std::move(knots), path.sigma() * sigma);
}

double eval_path(const HuberPath& path, double lambda) {
  const auto& knots = path.knots();
  if (lambda >= knots.front().lambda) return knots.front().center;
  if (lambda <= knots.back().lambda) return knots.back().center;
  // First knot with knot.lambda < lambda; its predecessor brackets from above.
  auto it = std::partition_point(knots.begin(), knots.end(),
                                 [&](const Knot& k) { return k.lambda >= lambda; });
  const Knot& right = *(it - 1);
  const Knot& left = *it;
  const double t = (lambda - left.lambda) / (right.lambda - left.lambda);
  return left.center + t * (right.center - left.center);
}

PathRange path_range(const HuberPath& path, std::optional<LambdaRange> restriction) {
  const auto& knots = path.knots();
  if (!restriction) {
    auto [lo, hi] = std::minmax_element(knots.begin(), knots.end(),
                                        [](const Knot& a, const Knot& b) { return a.center < b.center; });
    return {lo->center, hi->center};
  }
  validate_restriction(*restriction);
  const double a = restriction->low;
  const double b = restriction->high;
  double low = eval_path(path, a);
  double high = low;
  if (std::isfinite(b)) {
    const double at_b = eval_path(path, b);
    low = std::min(low, at_b);
    high = std::max(high, at_b);
  } else {
    low = std::min(low, path.first_center());
    high = std::max(high, path.first_center());
  }
  for (const Knot& k : knots) {
    if (k.lambda >= a && k.lambda <= b) {
      low = std::min(low, k.center);
      high = std::max(high, k.center);
    }
  }
  return {low, high};
}

HuberPath diff_path(const HuberPath& path_x, const HuberPath& path_y) {
  std::vector<double> grid;
  grid.reserve(path_x.size() + path_y.size() + 1);
  for (const Knot& k : path_x.knots()) grid.push_back(k.lambda);
  for (const Knot& k : path_y.knots()) grid.push_back(k.lambda);
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Knot> knots;
  knots.reserve(grid.size());
  for (double lambda : grid) {
    knots.push_back({lambda, eval_path(path_x, lambda) - eval_path(path_y, lambda)});
  }
  return HuberPath(std::move(knots));
}

}  // namespace familial
