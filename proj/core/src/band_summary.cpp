#include "familial/band_summary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "familial/parallel.hpp"

namespace familial {

namespace {

double quantile_type7(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<double> common_grid(const PosteriorFamily& family, std::size_t g_count) {
  if (g_count < 2) throw std::invalid_argument("common_grid: need at least two grid points");
  std::vector<double> leading;
  leading.reserve(family.b_count());
  for (const HuberPath& p : family.paths()) leading.push_back(p.leading_lambda());
  if (leading.empty()) throw std::invalid_argument("common_grid: empty family");

  double top = quantile_type7(std::move(leading), kGridQuantile);
  if (!(top > 0.0)) top = 1.0;

  std::vector<double> grid(g_count);
  const double step = top / static_cast<double>(g_count - 1);
  for (std::size_t g = 0; g < g_count; ++g) grid[g] = step * static_cast<double>(g);
  grid.back() = top;
  return grid;
}

FamilyGrid evaluate_on_grid(const PosteriorFamily& family, std::vector<double> lambdas,
                            unsigned threads) {
  if (lambdas.size() < 2) throw std::invalid_argument("evaluate_on_grid: need at least two grid points");
  for (std::size_t g = 1; g < lambdas.size(); ++g) {
    if (!(lambdas[g] > lambdas[g - 1])) {
      throw std::invalid_argument("evaluate_on_grid: grid must be strictly increasing");
    }
  }
  FamilyGrid out;
  out.b_count = family.b_count();
  out.curves.resize(out.b_count * lambdas.size());
  const std::size_t g_count = lambdas.size();
  parallel_for(out.b_count, threads, [&](std::size_t b) {
    const HuberPath& path = family.paths()[b];
    for (std::size_t g = 0; g < g_count; ++g) out.curves[b * g_count + g] = eval_path(path, lambdas[g]);
  });
  out.lambdas = std::move(lambdas);
  return out;
}

std::vector<double> modified_band_depth(const FamilyGrid& grid) {
  const std::size_t n = grid.b_count;
  const std::size_t g_count = grid.g_count();
  if (n < 2) throw std::invalid_argument("modified_band_depth: need at least two curves");

  // At each grid point, the pairs whose band misses curve b are the pairs
  // lying entirely below it or entirely above it.
  auto pairs = [](double k) { return 0.5 * k * (k - 1.0); };
  const double all_pairs = pairs(static_cast<double>(n));
  std::vector<double> depth(n, 0.0);
  std::vector<double> column(n);
  for (std::size_t g = 0; g < g_count; ++g) {
    for (std::size_t b = 0; b < n; ++b) column[b] = grid.at(b, g);
    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t b = 0; b < n; ++b) {
      const auto below = std::lower_bound(sorted.begin(), sorted.end(), column[b]) - sorted.begin();
      const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), column[b]);
      depth[b] += all_pairs - pairs(static_cast<double>(below)) - pairs(static_cast<double>(above));
    }
  }
  const double scale = 1.0 / (all_pairs * static_cast<double>(g_count));
  for (double& d : depth) d *= scale;
  return depth;
}

EnvelopeSet central_envelopes(const FamilyGrid& grid, const std::vector<double>& depths,
                              const std::vector<double>& proportions) {
  const std::size_t n = grid.b_count;
  const std::size_t g_count = grid.g_count();
  if (n < 2) throw std::invalid_argument("central_envelopes: need at least two curves");
  if (depths.size() != n) throw std::invalid_argument("central_envelopes: one depth per curve required");
  for (double p : proportions) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("central_envelopes: proportions must lie in (0, 1]");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depths[a] > depths[b]; });

  EnvelopeSet out;
  out.lambdas = grid.lambdas;
  out.median_index = order.front();
  out.median_curve.assign(grid.curves.begin() + static_cast<std::ptrdiff_t>(out.median_index * g_count),
                          grid.curves.begin() + static_cast<std::ptrdiff_t>((out.median_index + 1) * g_count));
  for (double p : proportions) {
    const auto keep = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-9)), 1, n);
    Envelope env{p, out.median_curve, out.median_curve};
    for (std::size_t r = 1; r < keep; ++r) {
      const std::size_t b = order[r];
      for (std::size_t g = 0; g < g_count; ++g) {
        env.lower[g] = std::min(env.lower[g], grid.at(b, g));
        env.upper[g] = std::max(env.upper[g], grid.at(b, g));
      }
    }
    out.envelopes.push_back(std::move(env));
  }
  return out;
}

EnvelopeSet summarize_family(const PosteriorFamily& family, std::size_t g_count,
                             const std::vector<double>& proportions, unsigned threads) {
  if (family.b_count() < 2) throw std::invalid_argument("summarize_family: need at least two paths");
  FamilyGrid grid = evaluate_on_grid(family, common_grid(family, g_count), threads);
  return central_envelopes(grid, modified_band_depth(grid), proportions);
}

}  // namespace familial
