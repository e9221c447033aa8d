#pragma once

#include <cstddef>
#include <vector>

#include "familial/familial_test.hpp"

namespace familial {

inline constexpr double kGridQuantile = 0.99;
inline constexpr std::size_t kDefaultGridSize = 512;

// B curves on a shared, strictly increasing lambda grid; row-major B x G.
struct FamilyGrid {
  std::vector<double> lambdas;
  std::vector<double> curves;
  std::size_t b_count = 0;

  std::size_t g_count() const noexcept { return lambdas.size(); }
  double at(std::size_t b, std::size_t g) const { return curves[b * lambdas.size() + g]; }
};

struct Envelope {
  double proportion = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct EnvelopeSet {
  std::vector<double> lambdas;
  std::vector<Envelope> envelopes;  // in the order the proportions were given
  std::vector<double> median_curve;
  std::size_t median_index = 0;
};

inline const std::vector<double> kDefaultProportions{0.5, 0.75, 0.9, 1.0};

// G evenly spaced lambdas on [0, q], q the 0.99 quantile (linear interpolation)
// of the leading-knot lambdas. q falls back to 1 when every path is constant.
std::vector<double> common_grid(const PosteriorFamily& family, std::size_t g_count = kDefaultGridSize);

FamilyGrid evaluate_on_grid(const PosteriorFamily& family, std::vector<double> lambdas,
                            unsigned threads = 1);

// Modified band depth with bands formed by pairs of curves.
std::vector<double> modified_band_depth(const FamilyGrid& grid);

// Pointwise min/max of the ceil(p * B) deepest curves for each proportion p.
// Depth ties are broken by the lower row index.
EnvelopeSet central_envelopes(const FamilyGrid& grid, const std::vector<double>& depths,
                              const std::vector<double>& proportions = kDefaultProportions);

// common_grid -> evaluate_on_grid -> modified_band_depth -> central_envelopes.
EnvelopeSet summarize_family(const PosteriorFamily& family, std::size_t g_count = kDefaultGridSize,
                             const std::vector<double>& proportions = kDefaultProportions,
                             unsigned threads = 1);

}  // namespace familial
