#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace familial {

// Counter-based seed derivation: mixes a root seed with up to three stream
// coordinates through splitmix64 so that every (seed, coordinates) tuple gets
// an independent, schedule-free generator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) noexcept;

// Random stream used by every sampler in the library. The variate algorithms
// are fixed here (not delegated to <random> distributions) so that output is
// identical across standard libraries.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  static Stream substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) {
    return Stream(derive_seed(seed, a, b, c));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_positive() { return 1.0 - uniform(); }
  // Inverse-CDF exponential with the given rate.
  double exponential(double rate = 1.0);
  // Marsaglia polar method; the second variate of each pair is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Flat Dirichlet(1, ..., 1) weights: normalized iid Exponential(1) draws.
std::vector<double> sample_dirichlet_weights(std::size_t n, Stream& stream);

}  // namespace familial
