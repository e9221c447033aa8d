#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "familial/band_summary.hpp"
#include "familial/familial_test.hpp"
#include "familial/sim_harness.hpp"

namespace familial::cli {

enum class Subcommand { kFitPath, kTest, kBoxplot, kSimulate, kBaseline };
enum class SampleMode { kOneSample, kPaired, kTwoSample };
enum class OutputFormat { kJson, kTable };
enum class WeightMode { kUniform, kDirichlet };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDegenerate = 3;

struct RunConfig {
  Subcommand subcommand = Subcommand::kTest;
  std::string data_path;
  std::string data2_path;
  SampleMode mode = SampleMode::kOneSample;

  std::optional<double> mu0;
  std::optional<std::pair<double, double>> null_interval;
  std::optional<LambdaRange> lambda_range;

  std::size_t b_count = kDefaultBootstraps;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  LossMatrix loss;
  ScaleRule scale = ScaleRule::kMad;
  OutputFormat format = OutputFormat::kJson;

  // fit-path
  WeightMode weights = WeightMode::kUniform;
  std::optional<double> sigma;

  // boxplot
  std::size_t grid = kDefaultGridSize;
  std::vector<double> proportions = kDefaultProportions;

  // simulate
  Design design = Design::kOneSample;
  std::string dist = "normal:0,1";
  std::string dist2;
  std::size_t n = 200;
  std::size_t n2 = 200;
  std::vector<double> mu0_grid;
  std::size_t reps = 200;
  std::vector<SimTest> tests{SimTest::kFamilial};
  bool with_band = false;
};

// Executes one subcommand. Data goes to `out`, diagnostics to `err`.
// Returns 0 on success, 2 on input errors, 3 on numeric degeneracy.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace familial::cli
