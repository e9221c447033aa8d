#include "familial/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace familial {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 1; n <= kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
    }
  }
  throw std::runtime_error("incomplete gamma: series did not converge");
}

double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
  }
  throw std::runtime_error("incomplete gamma: continued fraction did not converge");
}

void require_df(double df) {
  if (!(df > 0.0) || std::isinf(df)) throw std::invalid_argument("degrees of freedom must be positive and finite");
}

void require_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma: x must be nonnegative");
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("ln_gamma: argument must be positive and finite");
  static constexpr std::array<double, 9> kCoef{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::fabs(std::sin(std::numbers::pi * x))) - ln_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = kCoef[0];
  for (std::size_t i = 1; i < kCoef.size(); ++i) acc += kCoef[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("reg_inc_beta: a and b must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("reg_inc_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double reg_lower_inc_gamma(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double reg_upper_inc_gamma(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

double t_cdf(double t, double df) {
  require_df(df);
  if (std::isnan(t)) throw std::invalid_argument("t_cdf: NaN argument");
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
  return t > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, double df) {
  require_df(df);
  if (std::isnan(t)) throw std::invalid_argument("t_two_sided_p: NaN argument");
  if (std::isinf(t)) return 0.0;
  return reg_inc_beta(0.5 * df, 0.5, df / (df + t * t));
}

double chi2_cdf(double x, double df) {
  require_df(df);
  if (std::isnan(x)) throw std::invalid_argument("chi2_cdf: NaN argument");
  if (x <= 0.0) return 0.0;
  return reg_lower_inc_gamma(0.5 * df, 0.5 * x);
}

double chi2_sf(double x, double df) {
  require_df(df);
  if (std::isnan(x)) throw std::invalid_argument("chi2_sf: NaN argument");
  if (x <= 0.0) return 1.0;
  return reg_upper_inc_gamma(0.5 * df, 0.5 * x);
}

double special_function(SpecialFunction kind, std::span<const double> args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw std::invalid_argument("special_function: wrong number of arguments");
  };
  switch (kind) {
    case SpecialFunction::kLnGamma: need(1); return ln_gamma(args[0]);
    case SpecialFunction::kRegIncBeta: need(3); return reg_inc_beta(args[0], args[1], args[2]);
    case SpecialFunction::kTCdf: need(2); return t_cdf(args[0], args[1]);
    case SpecialFunction::kChi2Cdf: need(2); return chi2_cdf(args[0], args[1]);
  }
  throw std::invalid_argument("special_function: unknown kind");
}

}  // namespace familial
