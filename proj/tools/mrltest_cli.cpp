// mrltest: command-line front end for the mean-residual-life exponentiality test.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrl/alternatives.hpp"
#include "mrl/bahadur.hpp"
#include "mrl/data_io.hpp"
#include "mrl/error.hpp"
#include "mrl/inference.hpp"
#include "mrl/mc.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/pearson.hpp"
#include "mrl/statistic.hpp"
#include "mrl/study_config.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct Globals {
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string format = "json";
  double a = 1.0;
  double alpha = 0.05;
};

// CSV rows are flat: nested objects become prefix_key columns.
void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  for (const auto& [k, v] : j.items()) {
    const std::string key = prefix.empty() ? k : prefix + "_" + k;
    if (v.is_object()) {
      flatten(v, key, keys, values);
    } else {
      keys.push_back(key);
      values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void print_csv_rows(const std::vector<json>& rows) {
  bool header = true;
  for (const json& row : rows) {
    std::vector<std::string> keys;
    std::vector<std::string> values;
    flatten(row, "", keys, values);
    auto line = [](const std::vector<std::string>& cells) {
      std::string out;
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
      return out;
    };
    if (header) std::cout << line(keys) << '\n';
    header = false;
    std::cout << line(values) << '\n';
  }
}

// A report is one object; `rows` (if any) is its per-item table for CSV.
void emit(const Globals& g, const json& report, const std::vector<json>& rows = {}) {
  if (g.format == "csv") {
    print_csv_rows(rows.empty() ? std::vector<json>{report} : rows);
  } else {
    std::cout << report.dump(2) << '\n';
  }
}

mrl::ModelSpec model_from_tokens(const std::vector<std::string>& tokens) {
  std::string text;
  for (const auto& t : tokens) {
    // A bare family name is shorthand for family=<name>.
    text += (t.find('=') == std::string::npos ? "family=" + t : t) + " ";
  }
  return mrl::parse_model(text);
}

int cmd_test(const Globals& g, const std::string& path, const std::optional<std::string>& column,
             bool ci, std::optional<double> neighbourhood) {
  const std::vector<double> x =
      path == "-" ? mrl::read_observations(std::cin, column) : mrl::read_observations_file(path, column);
  const mrl::Sample sample(x);
  const mrl::TuningParam a(g.a);
  const double t = mrl::statistic(sample, a);
  const double crit = mrl::pearson_quantile(a, 1.0 - g.alpha);
  json r{{"n", sample.size()},
         {"a", g.a},
         {"alpha", g.alpha},
         {"statistic", t},
         {"critical_value", crit},
         {"approx_p_value", mrl::pearson_p_value(a, t)},
         {"p_value_method", "approximate (asymptotic Pearson fit)"},
         {"decision", t > crit ? "reject" : "retain"}};
  if (ci || neighbourhood) {
    const mrl::VarianceEstimate v = mrl::variance_estimate(sample, a);
    r["delta_hat"] = v.t_over_n();
    r["sigma2_hat"] = v.sigma2_hat;
    if (!(v.sigma2_hat >= mrl::kDegenerateVariance)) {
      r["warning"] = "degenerate variance estimate; interval and neighbourhood test not available";
    } else {
      if (ci) {
        const mrl::ConfidenceInterval c = mrl::confidence_interval(v, sample.size(), g.alpha);
        r["confidence_interval"] = {{"lower", c.lower}, {"upper", c.upper}, {"level", c.level}};
      }
      if (neighbourhood) {
        const mrl::NeighbourhoodResult nr = mrl::neighbourhood_test(sample, a, *neighbourhood, g.alpha);
        r["neighbourhood"] = {{"delta_tilde", *neighbourhood},
                              {"threshold", nr.threshold},
                              {"decision", nr.reject ? "reject" : "retain"}};
      }
    }
  }
  emit(g, r);
  return kOk;
}

int cmd_quantile(const Globals& g, double q, const std::string& backend, int reps, int terms) {
  const mrl::TuningParam a(g.a);
  json r{{"a", g.a}, {"q", q}, {"backend", backend}};
  if (backend == "pearson") {
    const mrl::PearsonDistribution d = mrl::null_pearson(a);
    r["value"] = d.quantile(q);
    r["pearson_type"] = std::string(mrl::to_string(d.type()));
  } else {
    r["value"] = mrl::series_quantile(a, q, terms, reps, g.seed, g.workers);
    r["terms"] = terms;
    r["reps"] = reps;
    r["seed"] = g.seed;
  }
  emit(g, r);
  return kOk;
}

int cmd_spectrum(const Globals& g, int count) {
  const mrl::EigenSpectrum s = mrl::eigen_spectrum(mrl::TuningParam(g.a), count);
  json r{{"a", g.a}, {"nu", s.nu}, {"lambdas", s.lambdas}, {"zeros", s.zeros}};
  std::vector<json> rows;
  for (int k = 0; k < count; ++k) {
    rows.push_back({{"a", g.a}, {"k", k + 1}, {"lambda", s.lambdas[k]}, {"zero", s.zeros[k]}});
  }
  emit(g, r, rows);
  return kOk;
}

int cmd_cumulants(const Globals& g) {
  const mrl::CumulantSet c = mrl::cumulants(mrl::TuningParam(g.a));
  const mrl::PearsonMoments m = mrl::pearson_moments(c);
  json r{{"a", g.a},
         {"kappa", {{"1", c.kappa[0]}, {"2", c.kappa[1]}, {"3", c.kappa[2]}, {"4", c.kappa[3]}}},
         {"mean", m.mean},
         {"variance", m.variance},
         {"skewness", m.skewness},
         {"kurtosis", m.kurtosis}};
  emit(g, r);
  return kOk;
}

int cmd_delta(const Globals& g, const std::vector<std::string>& tokens) {
  const mrl::ModelSpec spec = model_from_tokens(tokens);
  const mrl::AlternativeModel model = spec.build();
  const mrl::TuningParam a(g.a);
  json r{{"model", spec.describe()}, {"a", g.a}, {"delta", mrl::delta(model, a)},
         {"sigma2", mrl::sigma2(model, a)}, {"sigma2_delta_method", mrl::sigma2_delta_method(model, a)}};
  if (spec.family == mrl::Family::GammaBetaBeta && (spec.beta == 2.0 || spec.beta == 3.0 || spec.beta == 4.0)) {
    r["delta_closed_form"] = mrl::delta_closed_gamma(static_cast<int>(spec.beta), a);
  }
  emit(g, r);
  return kOk;
}

int cmd_slope(const Globals& g, const std::vector<std::string>& tokens) {
  const mrl::ModelSpec spec = model_from_tokens(tokens);
  const mrl::SlopeResult s = mrl::efficiency(mrl::FamilySpec{spec.family, spec.beta}, mrl::TuningParam(g.a));
  json r{{"family", std::string(mrl::to_string(s.family))},
         {"a", s.a},
         {"b2", s.b2},
         {"kl", s.kl},
         {"lambda1", s.lambda1},
         {"eff", s.eff}};
  emit(g, r);
  return kOk;
}

int cmd_study(const Globals& g, const CLI::App& app, const std::string& path,
              const std::string& output) {
  mrl::StudyConfig config;
  try {
    config = mrl::load_study_config(path);
  } catch (const mrl::DataError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw mrl::DataError(path + ": " + e.what());
  }
  // Flags given on the command line override the file.
  if (app.count("--seed")) config.seed = g.seed;
  if (app.count("--workers")) config.workers = g.workers;
  if (app.count("--alpha")) config.alpha = g.alpha;
  if (app.count("--a")) config.a_grid = {g.a};
  config.validate();
  const mrl::StudyResult result = mrl::run_study(config);
  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw mrl::DataError("cannot write '" + output + "'");
  }
  std::ostream& out = output.empty() ? std::cout : file;
  if (g.format == "csv") {
    mrl::write_csv(out, result);
  } else {
    mrl::write_json(out, result);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-residual-life test for exponentiality"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--workers", g.workers, "Worker threads (0 = hardware concurrency)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--a", g.a, "Tuning parameter a >= 0")->check(CLI::NonNegativeNumber);
  app.add_option("--alpha", g.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));

  auto* test = app.add_subcommand("test", "Test a sample for exponentiality");
  std::string data_path;
  std::optional<std::string> column;
  bool want_ci = false;
  std::optional<double> delta_tilde;
  test->add_option("file", data_path, "Data file, one value per line ('-' for stdin)")->required();
  test->add_option("--column", column, "Read this column of a CSV file with a header");
  test->add_flag("--ci", want_ci, "Add a confidence interval for Delta_a");
  test->add_option("--neighbourhood", delta_tilde,
                   "Test H: Delta_a >= DELTA against Delta_a < DELTA")
      ->check(CLI::PositiveNumber);

  auto* quantile = app.add_subcommand("quantile", "Null quantile of T_{n,a}");
  double q = 0.95;
  std::string backend = "pearson";
  int reps = 200000;
  int terms = 100;
  quantile->add_option("--q", q, "Quantile level")->check(CLI::Range(0.0, 1.0));
  quantile->add_option("--backend", backend, "pearson or series")
      ->check(CLI::IsMember({"pearson", "series"}));
  quantile->add_option("--reps", reps, "Series draws")->check(CLI::PositiveNumber);
  quantile->add_option("--terms", terms, "Series terms")->check(CLI::PositiveNumber);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the null covariance operator");
  int count = 20;
  spectrum->add_option("--count", count, "Number of eigenvalues")->check(CLI::PositiveNumber);

  auto* cumulants = app.add_subcommand("cumulants", "Cumulants of the limiting null law");

  std::vector<std::string> model_tokens;
  auto* delta = app.add_subcommand("delta", "Delta_a and sigma_a^2 of an alternative");
  delta->add_option("model", model_tokens, "Model, e.g. family=gamma_bb beta=4")->required();

  std::vector<std::string> family_tokens;
  auto* slope = app.add_subcommand("slope", "Approximate Bahadur efficiency");
  slope->add_option("family", family_tokens, "Family, e.g. lfr or family=emnw beta=3")->required();

  auto* study = app.add_subcommand("study", "Run a Monte Carlo study from a config file");
  std::string config_path;
  std::string output;
  study->add_option("config", config_path, "Config file (key = value or JSON)")->required();
  study->add_option("-o,--output", output, "Write results here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*test) return cmd_test(g, data_path, column, want_ci, delta_tilde);
    if (*quantile) return cmd_quantile(g, q, backend, reps, terms);
    if (*spectrum) return cmd_spectrum(g, count);
    if (*cumulants) return cmd_cumulants(g);
    if (*delta) return cmd_delta(g, model_tokens);
    if (*slope) return cmd_slope(g, family_tokens);
    if (*study) return cmd_study(g, app, config_path, output);
  } catch (const mrl::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
