#include "cli/run.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "cli/ingest.hpp"
#include "cli/output.hpp"
#include "familial/baselines.hpp"
#include "familial/errors.hpp"

namespace familial::cli {

namespace {

std::vector<double> load_single(const std::string& path, const char* flag) {
  if (path.empty()) throw input_error(std::string("missing required ") + flag);
  Columns cols = ingest_columns(path);
  if (cols.columns.size() != 1) {
    throw input_error(path + ": expected one column, found " + std::to_string(cols.columns.size()));
  }
  return std::move(cols.columns.front());
}

std::pair<std::vector<double>, std::vector<double>> load_paired(const RunConfig& c) {
  if (!c.data2_path.empty()) {
    auto x = load_single(c.data_path, "--data");
    auto y = load_single(c.data2_path, "--data2");
    if (x.size() != y.size()) {
      throw input_error("paired samples differ in length (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    }
    return {std::move(x), std::move(y)};
  }
  if (c.data_path.empty()) throw input_error("missing required --data");
  Columns cols = ingest_columns(c.data_path);
  if (cols.columns.size() != 2) {
    throw input_error(c.data_path + ": paired mode needs two columns, found " +
                      std::to_string(cols.columns.size()));
  }
  return {std::move(cols.columns[0]), std::move(cols.columns[1])};
}

std::vector<double> differences(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

std::string_view mode_name(SampleMode m) {
  switch (m) {
    case SampleMode::kOneSample: return "one-sample";
    case SampleMode::kPaired: return "paired";
    case SampleMode::kTwoSample: return "two-sample";
  }
  return "one-sample";
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

NullSpec null_from(const RunConfig& c) {
  if (c.mu0 && c.null_interval) throw input_error("give either --mu0 or --null-interval, not both");
  if (c.mu0) return NullSpec::point(*c.mu0, c.lambda_range);
  if (c.null_interval) return NullSpec::interval(c.null_interval->first, c.null_interval->second, c.lambda_range);
  throw input_error("a null hypothesis is required: --mu0 or --null-interval");
}

BootstrapConfig bootstrap_from(const RunConfig& c) {
  if (c.b_count == 0) throw input_error("--b must be at least 1");
  if (c.threads == 0) throw input_error("--threads must be at least 1");
  return BootstrapConfig{c.b_count, c.seed, c.threads, c.scale};
}

Json pair_or_null(const std::optional<LambdaRange>& r) {
  if (!r) return nullptr;
  return Json::array({r->low, r->high});
}

// ---- fit-path ---------------------------------------------------------------

void run_fit_path(const RunConfig& c, std::ostream& out) {
  std::vector<double> x = load_single(c.data_path, "--data");
  std::vector<double> weights;
  if (c.weights == WeightMode::kUniform) {
    weights.assign(x.size(), 1.0 / static_cast<double>(x.size()));
  } else {
    Stream stream = Stream::substream(c.seed, 0, 0);
    weights = sample_dirichlet_weights(x.size(), stream);
  }
  const WeightedSample sample(x, weights);

  HuberPath path = HuberPath::constant(x.front());
  if (c.sigma) {
    if (!(*c.sigma > 0.0) || !std::isfinite(*c.sigma)) throw input_error("--sigma must be positive");
    path = scale_path(fit_path(sample), *c.sigma);
  } else {
    path = fit_scaled_path(sample, c.scale);
  }

  if (c.format == OutputFormat::kJson) {
    Json doc;
    doc["n"] = x.size();
    doc["weights"] = c.weights == WeightMode::kUniform ? "uniform" : "dirichlet";
    doc["seed"] = c.seed;
    doc["sigma"] = path.sigma();
    Json knots = Json::array();
    for (const Knot& k : path.knots()) knots.push_back(Json{{"lambda", k.lambda}, {"center", k.center}});
    doc["knots"] = std::move(knots);
    write_json(doc, out);
  } else {
    out << "# sigma=" << format_number(path.sigma()) << '\n';
    write_row(out, {"lambda", "center"});
    for (const Knot& k : path.knots()) write_row(out, {format_number(k.lambda), format_number(k.center)});
  }
}

// ---- test -------------------------------------------------------------------

void run_test(const RunConfig& c, std::ostream& out) {
  const NullSpec null = null_from(c);
  const BootstrapConfig cfg = bootstrap_from(c);
  c.loss.validate();

  TestResult r;
  switch (c.mode) {
    case SampleMode::kOneSample:
      r = one_sample_test(load_single(c.data_path, "--data"), null, cfg, c.loss);
      break;
    case SampleMode::kPaired: {
      auto [x, y] = load_paired(c);
      r = paired_test(x, y, null, cfg, c.loss);
      break;
    }
    case SampleMode::kTwoSample: {
      auto x = load_single(c.data_path, "--data");
      auto y = load_single(c.data2_path, "--data2");
      r = independent_test(x, y, null, cfg, c.loss);
      break;
    }
  }

  if (c.format == OutputFormat::kJson) {
    Json doc;
    doc["method"] = mode_name(c.mode);
    doc["b"] = r.b_count;
    doc["seed"] = r.seed;
    doc["mu0_or_interval"] = null.is_point() ? Json(null.lo) : Json::array({null.lo, null.hi});
    doc["lambda_range"] = pair_or_null(null.lambda_range);
    doc["p_h0"] = r.p_h0;
    doc["p_h1"] = r.p_h1;
    doc["expected_loss"] = Json{{"h0", r.expected_loss.accept_h0},
                                {"h1", r.expected_loss.accept_h1},
                                {"indeterminate", r.expected_loss.indeterminate}};
    doc["decision"] = to_string(r.decision);
    write_json(doc, out);
  } else {
    write_row(out, {"method", "b", "seed", "null_lo", "null_hi", "lambda_lo", "lambda_hi", "p_h0", "p_h1",
                    "loss_h0", "loss_h1", "loss_indeterminate", "decision"});
    const auto& lr = null.lambda_range;
    write_row(out, {std::string(mode_name(c.mode)), std::to_string(r.b_count), std::to_string(r.seed),
                    format_number(null.lo), format_number(null.hi), lr ? format_number(lr->low) : "",
                    lr ? format_number(lr->high) : "", format_number(r.p_h0), format_number(r.p_h1),
                    format_number(r.expected_loss.accept_h0), format_number(r.expected_loss.accept_h1),
                    format_number(r.expected_loss.indeterminate), std::string(to_string(r.decision))});
  }
}

// ---- boxplot ----------------------------------------------------------------

void run_boxplot(const RunConfig& c, std::ostream& out) {
  const BootstrapConfig cfg = bootstrap_from(c);
  if (cfg.b_count < 2) throw input_error("boxplot needs --b of at least 2");
  if (c.grid < 2) throw input_error("--grid must be at least 2");

  std::optional<PosteriorFamily> family;
  switch (c.mode) {
    case SampleMode::kOneSample:
      family.emplace(bootstrap_family(load_single(c.data_path, "--data"), cfg));
      break;
    case SampleMode::kPaired: {
      auto [x, y] = load_paired(c);
      family.emplace(bootstrap_family(differences(x, y), cfg));
      break;
    }
    case SampleMode::kTwoSample: {
      auto [fx, fy] = independent_families(load_single(c.data_path, "--data"),
                                           load_single(c.data2_path, "--data2"), cfg);
      std::vector<HuberPath> diffs;
      diffs.reserve(fx.b_count());
      for (std::size_t b = 0; b < fx.b_count(); ++b) diffs.push_back(diff_path(fx.paths()[b], fy.paths()[b]));
      family.emplace(std::move(diffs), cfg.seed);
      break;
    }
  }
  const EnvelopeSet env = summarize_family(*family, c.grid, c.proportions, c.threads);

  std::vector<std::string> columns{"lambda", "median"};
  for (const Envelope& e : env.envelopes) {
    columns.push_back("lower_" + shortest(e.proportion));
    columns.push_back("upper_" + shortest(e.proportion));
  }
  const std::string rule = "linear grid on [0, q], q = 0.99 quantile of leading-knot lambdas";

  if (c.format == OutputFormat::kJson) {
    Json doc;
    Json meta;
    meta["method"] = mode_name(c.mode);
    meta["g"] = env.lambdas.size();
    meta["b"] = family->b_count();
    meta["seed"] = cfg.seed;
    meta["proportions"] = c.proportions;
    meta["lambda_max_rule"] = rule;
    meta["lambda_max"] = env.lambdas.back();
    meta["median_index"] = env.median_index;
    doc["metadata"] = std::move(meta);
    doc["columns"] = columns;
    Json rows = Json::array();
    for (std::size_t g = 0; g < env.lambdas.size(); ++g) {
      Json row = Json::array({env.lambdas[g], env.median_curve[g]});
      for (const Envelope& e : env.envelopes) {
        row.push_back(e.lower[g]);
        row.push_back(e.upper[g]);
      }
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    write_json(doc, out);
  } else {
    out << "# method=" << mode_name(c.mode) << '\n'
        << "# g=" << env.lambdas.size() << '\n'
        << "# b=" << family->b_count() << '\n'
        << "# seed=" << cfg.seed << '\n'
        << "# lambda_max_rule=" << rule << '\n'
        << "# lambda_max=" << format_number(env.lambdas.back()) << '\n';
    write_row(out, columns);
    for (std::size_t g = 0; g < env.lambdas.size(); ++g) {
      std::vector<std::string> row{format_number(env.lambdas[g]), format_number(env.median_curve[g])};
      for (const Envelope& e : env.envelopes) {
        row.push_back(format_number(e.lower[g]));
        row.push_back(format_number(e.upper[g]));
      }
      write_row(out, row);
    }
  }
}

// ---- simulate ---------------------------------------------------------------

void run_simulate(const RunConfig& c, std::ostream& out) {
  Scenario sc;
  sc.design = c.design;
  sc.dist_x = DistSpec::parse(c.dist);
  if (!c.dist2.empty()) sc.dist_y = DistSpec::parse(c.dist2);
  sc.n_x = c.n;
  sc.n_y = c.n2;
  sc.mu0_grid = c.mu0_grid;
  if (sc.mu0_grid.empty() && c.mu0) sc.mu0_grid = {*c.mu0};
  sc.reps = c.reps;
  sc.b_count = c.b_count;
  sc.seed = c.seed;
  sc.tests = c.tests;
  sc.threads = std::max(1u, c.threads);
  sc.scale = c.scale;
  sc.loss = c.loss;
  sc.validate();

  const RejectionTable table = rejection_curve(sc);
  std::optional<Interval> band;
  if (c.with_band) {
    band = sc.design == Design::kOneSample ? familial_null_band(sc.dist_x)
                                           : familial_null_band(sc.dist_x, *sc.dist_y);
  }

  if (c.format == OutputFormat::kJson) {
    Json doc;
    Json scen;
    scen["design"] = sc.design == Design::kOneSample ? "one-sample" : "two-sample";
    scen["dist"] = sc.dist_x.describe();
    scen["dist2"] = sc.dist_y ? Json(sc.dist_y->describe()) : Json(nullptr);
    scen["n"] = sc.n_x;
    scen["n2"] = sc.design == Design::kIndependent ? Json(sc.n_y) : Json(nullptr);
    scen["reps"] = sc.reps;
    scen["b"] = sc.b_count;
    scen["seed"] = sc.seed;
    scen["alpha"] = sc.alpha;
    Json tests = Json::array();
    for (SimTest t : sc.tests) tests.push_back(to_string(t));
    scen["tests"] = std::move(tests);
    doc["scenario"] = std::move(scen);
    doc["null_band"] = band ? Json::array({band->low, band->high}) : Json(nullptr);
    Json rows = Json::array();
    for (const RejectionRow& r : table) {
      rows.push_back(Json{{"mu0", r.mu0},
                          {"test", to_string(r.test)},
                          {"rejection_frequency", r.rejection_frequency},
                          {"reps", r.reps},
                          {"mc_stderr", r.mc_stderr}});
    }
    doc["rows"] = std::move(rows);
    write_json(doc, out);
  } else {
    if (band) out << "# null_band=" << format_number(band->low) << ',' << format_number(band->high) << '\n';
    write_row(out, {"mu0", "test", "rejection_frequency", "reps", "mc_stderr"});
    for (const RejectionRow& r : table) {
      write_row(out, {format_number(r.mu0), std::string(to_string(r.test)), format_number(r.rejection_frequency),
                      std::to_string(r.reps), format_number(r.mc_stderr)});
    }
  }
}

// ---- baseline ---------------------------------------------------------------

void run_baseline(const RunConfig& c, std::ostream& out) {
  if (!c.mu0) throw input_error("baseline needs --mu0");
  const double mu0 = *c.mu0;
  std::vector<FrequentistResult> results;
  switch (c.mode) {
    case SampleMode::kOneSample: {
      const auto x = load_single(c.data_path, "--data");
      results = {one_sample_t(x, mu0), sign_test(x, mu0)};
      break;
    }
    case SampleMode::kPaired: {
      auto [x, y] = load_paired(c);
      const auto z = differences(x, y);
      results = {one_sample_t(z, mu0), sign_test(z, mu0)};
      break;
    }
    case SampleMode::kTwoSample: {
      const auto x = load_single(c.data_path, "--data");
      const auto y = load_single(c.data2_path, "--data2");
      results = {welch_t(x, y, mu0), mood_median_test(x, y, mu0)};
      break;
    }
  }

  if (c.format == OutputFormat::kJson) {
    Json doc;
    doc["mode"] = mode_name(c.mode);
    doc["mu0"] = mu0;
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back(Json{{"method", to_string(r.method)},
                          {"statistic", r.statistic},
                          {"p_value", r.p_value},
                          {"df", r.df ? Json(*r.df) : Json(nullptr)}});
    }
    doc["results"] = std::move(rows);
    write_json(doc, out);
  } else {
    write_row(out, {"method", "statistic", "p_value", "df"});
    for (const auto& r : results) {
      write_row(out, {std::string(to_string(r.method)), format_number(r.statistic), format_number(r.p_value),
                      r.df ? format_number(*r.df) : ""});
    }
  }
}

// ---- argument parsing -------------------------------------------------------

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw input_error(std::string(flag) + ": not a number: '" + tok + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw input_error(std::string(flag) + ": not a number: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw input_error(std::string(flag) + ": empty list");
  return out;
}

std::pair<double, double> parse_pair(const std::string& text, const char* flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 2) throw input_error(std::string(flag) + ": expected two comma-separated values");
  return {v[0], v[1]};
}

SimTest parse_sim_test(const std::string& name) {
  if (name == "familial") return SimTest::kFamilial;
  if (name == "t" || name == "welch") return SimTest::kT;
  if (name == "sign") return SimTest::kSign;
  if (name == "mood") return SimTest::kMood;
  throw input_error("--tests: unknown test '" + name + "'");
}

struct RawFlags {
  std::string null_interval;
  std::string lambda_range;
  std::vector<double> loss;
  std::string format = "json";
  std::string scale = "mad";
  std::string weights = "uniform";
  std::string mu0_grid;
  std::string tests;
  std::string proportions;
  std::string design = "one-sample";
  bool paired = false;
  bool two_sample = false;
};

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.subcommand) {
      case Subcommand::kFitPath: run_fit_path(c, out); break;
      case Subcommand::kTest: run_test(c, out); break;
      case Subcommand::kBoxplot: run_boxplot(c, out); break;
      case Subcommand::kSimulate: run_simulate(c, out); break;
      case Subcommand::kBaseline: run_baseline(c, out); break;
    }
    return kExitOk;
  } catch (const degenerate_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Familial hypothesis tests on the Huber family of centers"};
  app.require_subcommand(1);

  RunConfig cfg;
  RawFlags raw;

  auto add_common = [&](CLI::App* sub, bool bootstrap) {
    sub->add_option("--data", cfg.data_path, "Delimited numeric input (one column, or two for --paired)");
    sub->add_option("--format", raw.format, "Output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--seed", cfg.seed, "Root random seed");
    sub->add_option("--scale", raw.scale, "Lambda scale rule: mad (default) or sd")
        ->check(CLI::IsMember({"mad", "sd"}));
    if (bootstrap) {
      sub->add_option("--b", cfg.b_count, "Number of Bayesian bootstrap replicates");
      sub->add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)");
    }
  };
  auto add_samples = [&](CLI::App* sub) {
    sub->add_option("--data2", cfg.data2_path, "Second sample (two-sample, or paired second column)");
    sub->add_flag("--paired", raw.paired, "Paired samples: test the differences");
    sub->add_flag("--two-sample", raw.two_sample, "Independent samples");
  };

  CLI::App* fit = app.add_subcommand("fit-path", "Fit the Huber solution path of one sample");
  add_common(fit, false);
  fit->add_option("--weights", raw.weights, "uniform or dirichlet (one Bayesian-bootstrap draw)")
      ->check(CLI::IsMember({"uniform", "dirichlet"}));
  fit->add_option("--sigma", cfg.sigma, "Override the lambda scale");

  CLI::App* test = app.add_subcommand("test", "Familial hypothesis test");
  add_common(test, true);
  add_samples(test);
  test->add_option("--mu0", cfg.mu0, "Point null value");
  test->add_option("--null-interval", raw.null_interval, "Interval null lo,hi (inf allowed)");
  test->add_option("--lambda-range", raw.lambda_range, "Restrict lambda to a,b");
  test->add_option("--loss", raw.loss,
                   "Loss matrix: h0|h0 h0|h1 h1|h0 h1|h1 i|h0 i|h1")
      ->expected(6);

  CLI::App* box = app.add_subcommand("boxplot", "Central-region envelopes of the posterior family");
  add_common(box, true);
  add_samples(box);
  box->add_option("--grid", cfg.grid, "Number of lambda grid points");
  box->add_option("--proportions", raw.proportions, "Central proportions, comma separated");

  CLI::App* sim = app.add_subcommand("simulate", "Rejection-frequency simulation");
  add_common(sim, true);
  sim->add_option("--design", raw.design, "one-sample or two-sample")
      ->check(CLI::IsMember({"one-sample", "two-sample"}));
  sim->add_option("--dist", cfg.dist, "normal:m,s | exponential:rate | lognormal:m,s | poisson:mean");
  sim->add_option("--dist2", cfg.dist2, "Second distribution (two-sample)");
  sim->add_option("--n", cfg.n, "Sample size");
  sim->add_option("--n2", cfg.n2, "Second sample size");
  sim->add_option("--mu0", cfg.mu0, "Single null value");
  sim->add_option("--mu0-grid", raw.mu0_grid, "Null values, comma separated");
  sim->add_option("--reps", cfg.reps, "Repetitions");
  sim->add_option("--tests", raw.tests, "familial,t,sign,mood");
  sim->add_flag("--with-band", cfg.with_band, "Also compute the numerical familial null band");

  CLI::App* base = app.add_subcommand("baseline", "Classical comparator tests");
  add_common(base, false);
  add_samples(base);
  base->add_option("--mu0", cfg.mu0, "Null value")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*fit) cfg.subcommand = Subcommand::kFitPath;
    if (*test) cfg.subcommand = Subcommand::kTest;
    if (*box) cfg.subcommand = Subcommand::kBoxplot;
    if (*sim) cfg.subcommand = Subcommand::kSimulate;
    if (*base) cfg.subcommand = Subcommand::kBaseline;

    if (raw.paired && raw.two_sample) throw input_error("--paired and --two-sample are exclusive");
    cfg.mode = raw.paired ? SampleMode::kPaired : raw.two_sample ? SampleMode::kTwoSample : SampleMode::kOneSample;
    if (cfg.mode == SampleMode::kTwoSample && cfg.data2_path.empty()) throw input_error("--two-sample needs --data2");
    cfg.format = raw.format == "table" ? OutputFormat::kTable : OutputFormat::kJson;
    cfg.scale = raw.scale == "sd" ? ScaleRule::kStandardDeviation : ScaleRule::kMad;
    cfg.weights = raw.weights == "dirichlet" ? WeightMode::kDirichlet : WeightMode::kUniform;
    cfg.design = raw.design == "two-sample" ? Design::kIndependent : Design::kOneSample;
    if (!raw.null_interval.empty()) cfg.null_interval = parse_pair(raw.null_interval, "--null-interval");
    if (!raw.lambda_range.empty()) {
      auto [a, b] = parse_pair(raw.lambda_range, "--lambda-range");
      cfg.lambda_range = LambdaRange{a, b};
    }
    if (!raw.loss.empty()) {
      cfg.loss = LossMatrix{raw.loss[0], raw.loss[1], raw.loss[2], raw.loss[3], raw.loss[4], raw.loss[5]};
    }
    if (!raw.mu0_grid.empty()) cfg.mu0_grid = parse_list(raw.mu0_grid, "--mu0-grid");
    if (!raw.proportions.empty()) cfg.proportions = parse_list(raw.proportions, "--proportions");
    if (*sim) {
      if (!raw.tests.empty()) {
        cfg.tests.clear();
        std::stringstream ss(raw.tests);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.tests.push_back(parse_sim_test(tok));
      }
      if (sim->count("--b") == 0) cfg.b_count = 500;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  return run(cfg, out, err);
}

}  // namespace familial::cli
