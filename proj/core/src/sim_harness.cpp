#include "familial/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "familial/baselines.hpp"
#include "familial/parallel.hpp"

namespace familial {

namespace {

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string token(text.substr(0, comma));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("distribution: bad parameter '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("distribution: bad parameter '" + token + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double poisson_draw(double mean, Stream& stream) {
  double p = std::exp(-mean);
  double cdf = p;
  const double u = stream.uniform();
  int k = 0;
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / k;
    cdf += p;
  }
  return static_cast<double>(k);
}

bool rejects(SimTest test, Design design, std::span<const double> x, std::span<const double> y,
             double mu0, const Scenario& sc, std::uint64_t cell_seed) {
  switch (test) {
    case SimTest::kFamilial: {
      BootstrapConfig cfg{sc.b_count, cell_seed, 1, sc.scale};
      const NullSpec null = NullSpec::point(mu0);
      const TestResult r = design == Design::kOneSample ? one_sample_test(x, null, cfg, sc.loss)
                                                        : independent_test(x, y, null, cfg, sc.loss);
      return r.decision == Decision::kAcceptH1;
    }
    case SimTest::kT:
      return (design == Design::kOneSample ? one_sample_t(x, mu0) : welch_t(x, y, mu0)).p_value < sc.alpha;
    case SimTest::kSign:
      return sign_test(x, mu0).p_value < sc.alpha;
    case SimTest::kMood:
      return mood_median_test(x, y, mu0).p_value < sc.alpha;
  }
  return false;
}

HuberPath population_path(const DistSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t stream_id) {
  Stream stream = Stream::substream(seed, stream_id);
  WeightedSample sample = WeightedSample::uniform(sample_dist(spec, n, stream));
  return fit_scaled_path(sample, ScaleRule::kMad);
}

}  // namespace

DistSpec DistSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  const std::vector<double> p =
      colon == std::string_view::npos ? std::vector<double>{} : parse_numbers(text.substr(colon + 1));
  auto want = [&](std::size_t k) {
    if (p.size() != k) {
      throw std::invalid_argument("distribution '" + name + "' expects " + std::to_string(k) + " parameter(s)");
    }
  };
  DistSpec spec;
  if (name == "normal") {
    want(2);
    spec = normal(p[0], p[1]);
  } else if (name == "exponential") {
    want(1);
    spec = exponential(p[0]);
  } else if (name == "lognormal") {
    want(2);
    spec = lognormal(p[0], p[1]);
  } else if (name == "poisson") {
    want(1);
    spec = poisson(p[0]);
  } else {
    throw std::invalid_argument("unknown distribution '" + name + "'");
  }
  spec.validate();
  return spec;
}

void DistSpec::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  switch (kind) {
    case DistKind::kNormal:
      if (!std::isfinite(a) || !positive(b)) throw std::invalid_argument("normal: need finite mean and sd > 0");
      break;
    case DistKind::kExponential:
      if (!positive(a)) throw std::invalid_argument("exponential: rate must be positive");
      break;
    case DistKind::kLognormal:
      if (!std::isfinite(a) || !positive(b)) throw std::invalid_argument("lognormal: need finite mu and sigma > 0");
      break;
    case DistKind::kPoisson:
      if (!positive(a) || a > kMaxPoissonMean) throw std::invalid_argument("poisson: mean must lie in (0, 30]");
      break;
  }
}

std::string DistSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DistKind::kNormal: os << "normal:" << a << ',' << b; break;
    case DistKind::kExponential: os << "exponential:" << a; break;
    case DistKind::kLognormal: os << "lognormal:" << a << ',' << b; break;
    case DistKind::kPoisson: os << "poisson:" << a; break;
  }
  return os.str();
}

std::vector<double> sample_dist(const DistSpec& spec, std::size_t n, Stream& stream) {
  spec.validate();
  std::vector<double> out(n);
  for (double& v : out) {
    switch (spec.kind) {
      case DistKind::kNormal: v = spec.a + spec.b * stream.normal(); break;
      case DistKind::kExponential: v = stream.exponential(spec.a); break;
      case DistKind::kLognormal: v = std::exp(spec.a + spec.b * stream.normal()); break;
      case DistKind::kPoisson: v = poisson_draw(spec.a, stream); break;
    }
  }
  return out;
}

std::string_view to_string(SimTest t) noexcept {
  switch (t) {
    case SimTest::kFamilial: return "familial";
    case SimTest::kT: return "t";
    case SimTest::kSign: return "sign";
    case SimTest::kMood: return "mood";
  }
  return "familial";
}

void Scenario::validate() const {
  if (reps == 0) throw std::invalid_argument("scenario: reps must be at least 1");
  if (mu0_grid.empty()) throw std::invalid_argument("scenario: empty mu0 grid");
  if (tests.empty()) throw std::invalid_argument("scenario: no tests selected");
  if (b_count == 0) throw std::invalid_argument("scenario: bootstrap count must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("scenario: alpha must lie in (0, 1)");
  for (double m : mu0_grid) {
    if (!std::isfinite(m)) throw std::invalid_argument("scenario: non-finite mu0");
  }
  dist_x.validate();
  loss.validate();
  if (design == Design::kOneSample) {
    if (n_x < 2) throw std::invalid_argument("scenario: sample size must be at least 2");
    for (SimTest t : tests) {
      if (t == SimTest::kMood) throw std::invalid_argument("scenario: mood test needs two samples");
    }
  } else {
    if (!dist_y) throw std::invalid_argument("scenario: independent design needs a second distribution");
    dist_y->validate();
    if (n_x < 2 || n_y < 2) throw std::invalid_argument("scenario: sample sizes must be at least 2");
    for (SimTest t : tests) {
      if (t == SimTest::kSign) throw std::invalid_argument("scenario: sign test needs one sample");
    }
  }
}

RejectionTable rejection_curve(const Scenario& sc) {
  sc.validate();
  const std::size_t grid = sc.mu0_grid.size();
  const std::size_t n_tests = sc.tests.size();
  const std::size_t cells = sc.reps * grid;
  std::vector<unsigned char> hits(cells * n_tests, 0);

  parallel_for(cells, sc.threads, [&](std::size_t cell) {
    const std::size_t rep = cell / grid;
    const std::size_t j = cell % grid;
    Stream stream = Stream::substream(sc.seed, rep, j, 0);
    const std::vector<double> x = sample_dist(sc.dist_x, sc.n_x, stream);
    std::vector<double> y;
    if (sc.design == Design::kIndependent) y = sample_dist(*sc.dist_y, sc.n_y, stream);
    const std::uint64_t bootstrap_seed = derive_seed(sc.seed, rep, j, 1);
    for (std::size_t t = 0; t < n_tests; ++t) {
      hits[cell * n_tests + t] = rejects(sc.tests[t], sc.design, x, y, sc.mu0_grid[j], sc, bootstrap_seed);
    }
  });

  RejectionTable table;
  table.reserve(grid * n_tests);
  for (std::size_t j = 0; j < grid; ++j) {
    for (std::size_t t = 0; t < n_tests; ++t) {
      std::size_t count = 0;
      for (std::size_t rep = 0; rep < sc.reps; ++rep) count += hits[(rep * grid + j) * n_tests + t];
      RejectionRow row;
      row.mu0 = sc.mu0_grid[j];
      row.test = sc.tests[t];
      row.reps = sc.reps;
      row.rejection_frequency = static_cast<double>(count) / static_cast<double>(sc.reps);
      const double f = row.rejection_frequency;
      row.mc_stderr = std::sqrt(f * (1.0 - f) / static_cast<double>(sc.reps));
      table.push_back(row);
    }
  }
  return table;
}

Interval familial_null_band(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
  const PathRange r = path_range(population_path(spec, n, seed, 0));
  return {r.low, r.high};
}

Interval familial_null_band(const DistSpec& x, const DistSpec& y, std::size_t n, std::uint64_t seed) {
  const HuberPath px = population_path(x, n, seed, 0);
  const HuberPath py = population_path(y, n, seed, 1);
  const PathRange r = path_range(diff_path(px, py));
  return {r.low, r.high};
}

}  // namespace familial
