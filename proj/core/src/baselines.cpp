#include "familial/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "familial/errors.hpp"
#include "familial/special_functions.hpp"
#include "familial/weighted_stats.hpp"

namespace familial {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

Moments moments(std::span<const double> v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

void require_sample(std::span<const double> v, std::size_t min_size, const char* what) {
  if (v.size() < min_size) {
    throw std::invalid_argument(std::string(what) + ": need at least " + std::to_string(min_size) +
                                " observations");
  }
  require_finite(v, what);
}

void require_finite_param(double mu0) {
  if (!std::isfinite(mu0)) throw std::invalid_argument("null value must be finite");
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string_view to_string(BaselineMethod m) noexcept {
  switch (m) {
    case BaselineMethod::kOneSampleT: return "t";
    case BaselineMethod::kWelchT: return "welch";
    case BaselineMethod::kSign: return "sign";
    case BaselineMethod::kMoodMedian: return "mood";
  }
  return "t";
}

double binomial_half_cdf(std::size_t k, std::size_t m) {
  if (k >= m) return 1.0;
  if (m <= 62) {
    std::uint64_t coef = 1;  // C(m, j)
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      acc += coef;
      coef = coef * (m - j) / (j + 1);
    }
    return std::ldexp(static_cast<double>(acc), -static_cast<int>(m));
  }
  // P(K <= k) = I_{1/2}(m - k, k + 1)
  return reg_inc_beta(static_cast<double>(m - k), static_cast<double>(k) + 1.0, 0.5);
}

FrequentistResult one_sample_t(std::span<const double> data, double mu0) {
  require_sample(data, 2, "one_sample_t");
  require_finite_param(mu0);
  const Moments m = moments(data);
  if (!(m.var > 0.0)) throw degenerate_error("one_sample_t: zero sample variance");
  const double n = static_cast<double>(data.size());
  const double df = n - 1.0;
  FrequentistResult r;
  r.method = BaselineMethod::kOneSampleT;
  r.statistic = (m.mean - mu0) / std::sqrt(m.var / n);
  r.df = df;
  r.p_value = std::clamp(t_two_sided_p(r.statistic, df), 0.0, 1.0);
  return r;
}

FrequentistResult welch_t(std::span<const double> x, std::span<const double> y, double mu0) {
  require_sample(x, 2, "welch_t x");
  require_sample(y, 2, "welch_t y");
  require_finite_param(mu0);
  const Moments mx = moments(x);
  const Moments my = moments(y);
  const double vx = mx.var / static_cast<double>(x.size());
  const double vy = my.var / static_cast<double>(y.size());
  if (!(vx + vy > 0.0)) throw degenerate_error("welch_t: both sample variances are zero");
  FrequentistResult r;
  r.method = BaselineMethod::kWelchT;
  r.statistic = (mx.mean - my.mean - mu0) / std::sqrt(vx + vy);
  const double df = (vx + vy) * (vx + vy) /
                    (vx * vx / static_cast<double>(x.size() - 1) + vy * vy / static_cast<double>(y.size() - 1));
  r.df = df;
  r.p_value = std::clamp(t_two_sided_p(r.statistic, df), 0.0, 1.0);
  return r;
}

FrequentistResult sign_test(std::span<const double> data, double mu0) {
  require_sample(data, 1, "sign_test");
  require_finite_param(mu0);
  std::size_t above = 0;
  std::size_t below = 0;
  for (double v : data) {
    if (v > mu0) ++above;
    else if (v < mu0) ++below;
  }
  const std::size_t m = above + below;
  if (m == 0) throw degenerate_error("sign_test: every observation equals the null value");
  const double lower = binomial_half_cdf(above, m);
  const double upper = above == 0 ? 1.0 : 1.0 - binomial_half_cdf(above - 1, m);
  FrequentistResult r;
  r.method = BaselineMethod::kSign;
  r.statistic = static_cast<double>(above);
  r.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
  return r;
}

FrequentistResult mood_median_test(std::span<const double> x, std::span<const double> y, double mu0) {
  require_sample(x, 1, "mood_median_test x");
  require_sample(y, 1, "mood_median_test y");
  require_finite_param(mu0);
  std::vector<double> shifted_y(y.begin(), y.end());
  for (double& v : shifted_y) v += mu0;
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), shifted_y.begin(), shifted_y.end());
  const double median = median_of(pooled);

  double x_above = 0, x_below = 0, y_above = 0, y_below = 0;
  for (double v : x) {
    if (v > median) ++x_above;
    else if (v < median) ++x_below;
  }
  for (double v : shifted_y) {
    if (v > median) ++y_above;
    else if (v < median) ++y_below;
  }
  const double row_x = x_above + x_below;
  const double row_y = y_above + y_below;
  const double col_above = x_above + y_above;
  const double col_below = x_below + y_below;
  if (row_x == 0 || row_y == 0 || col_above == 0 || col_below == 0) {
    throw degenerate_error("mood_median_test: a margin of the 2x2 table is empty");
  }
  const double total = row_x + row_y;
  const double cross = x_above * y_below - x_below * y_above;
  FrequentistResult r;
  r.method = BaselineMethod::kMoodMedian;
  r.statistic = total * cross * cross / (row_x * row_y * col_above * col_below);
  r.df = 1.0;
  r.p_value = std::clamp(chi2_sf(r.statistic, 1.0), 0.0, 1.0);
  return r;
}

}  // namespace familial
