#include "mrl/mc.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "mrl/inference.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/parallel.hpp"
#include "mrl/rng.hpp"
#include "mrl/statistic.hpp"

namespace mrl {

ModelSpec parse_model(const std::string& text) {
  ModelSpec spec;
  bool have_family = false;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "family") {
      spec.family = parse_family(value);
      have_family = true;
      continue;
    }
    std::size_t used = 0;
    double number = 0.0;
    try {
      number = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw std::invalid_argument("'" + value + "' is not a number");
    }
    if (key == "theta") {
      spec.theta = number;
    } else if (key == "beta") {
      spec.beta = number;
    } else {
      throw std::invalid_argument("unknown model key '" + key + "'");
    }
  }
  if (!have_family) throw std::invalid_argument("model needs family=<name>");
  spec.build();  // validates the parameter range
  return spec;
}

std::string_view to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::Power: return "power";
    case StudyKind::Coverage: return "coverage";
    case StudyKind::Limit: return "limit";
    case StudyKind::NullQuantiles: return "null";
  }
  return "?";
}

StudyKind parse_study_kind(std::string_view name) {
  if (name == "power") return StudyKind::Power;
  if (name == "coverage") return StudyKind::Coverage;
  if (name == "limit") return StudyKind::Limit;
  if (name == "null") return StudyKind::NullQuantiles;
  throw std::invalid_argument("unknown study '" + std::string(name) + "'");
}

void StudyConfig::validate() const {
  if (a_grid.empty()) throw std::invalid_argument("a grid is empty");
  for (double a : a_grid) (void)TuningParam(a);
  if (kind != StudyKind::NullQuantiles && models.empty()) {
    throw std::invalid_argument("model list is empty");
  }
  if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t n : n_grid) {
    if (n < 2) throw std::invalid_argument("sample sizes must be at least 2");
  }
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (null_reps < 1) throw std::invalid_argument("null_reps must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  for (double q : quantiles) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile levels must lie in (0, 1)");
  }
}

namespace {

std::uint32_t cell_id(std::size_t a_idx, std::size_t m_idx, std::size_t n_idx,
                      std::size_t models, std::size_t sizes) {
  return static_cast<std::uint32_t>((a_idx * models + m_idx) * sizes + n_idx);
}

// Streams for null simulations live in the upper half of the cell space.
constexpr std::uint32_t kNullCellBase = 0x80000000u;

std::vector<double> draw_sample(const AlternativeModel& model, std::size_t n, CounterRng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = model.draw(rng);
  return x;
}

double rate_stderr(double p, int reps) { return std::sqrt(p * (1.0 - p) / reps); }

StudyRecord make_record(const StudyConfig& c, double a, const ModelSpec* m, std::size_t n,
                        std::string metric, double estimate, double stderr_, int degenerate) {
  StudyRecord r;
  r.study = std::string(to_string(c.kind));
  r.a = a;
  r.model = m ? m->describe() : "exp";
  r.theta = m ? m->theta : 0.0;
  r.beta = m ? m->beta : 0.0;
  r.n = n;
  r.metric = std::move(metric);
  r.estimate = estimate;
  r.mc_stderr = stderr_;
  r.reps = c.reps;
  r.degenerate = degenerate;
  return r;
}

double true_delta(const ModelSpec& m, double a) {
  if (m.family == Family::GammaBetaBeta && (m.beta == 2.0 || m.beta == 3.0 || m.beta == 4.0)) {
    return delta_closed_gamma(static_cast<int>(m.beta), TuningParam(a));
  }
  return delta(m.build(), TuningParam(a));
}

}  // namespace

std::vector<double> null_quantiles(double a, std::size_t n, int reps,
                                   const std::vector<double>& q, std::uint64_t seed,
                                   unsigned workers, std::uint32_t cell) {
  if (n < 2) throw std::invalid_argument("null quantiles need n >= 2");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  const TuningParam tuning(a);
  const AlternativeModel exp1 = AlternativeModel::exponential();
  std::vector<double> t(reps);
  parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
    CounterRng rng(seed, cell, static_cast<std::uint32_t>(r));
    t[r] = statistic(Sample(draw_sample(exp1, n, rng)), tuning);
  });
  std::sort(t.begin(), t.end());
  std::vector<double> out;
  for (double level : q) {
    if (!(level > 0.0 && level < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
    const double h = (static_cast<double>(reps) - 1.0) * level;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min<std::size_t>(lo + 1, t.size() - 1);
    out.push_back(t[lo] + (h - static_cast<double>(lo)) * (t[hi] - t[lo]));
  }
  return out;
}

StudyResult power_study(const StudyConfig& c) {
  c.validate();
  StudyResult result;
  const std::size_t M = c.models.size();
  const std::size_t N = c.n_grid.size();
  for (std::size_t ai = 0; ai < c.a_grid.size(); ++ai) {
    const TuningParam a(c.a_grid[ai]);
    const double pearson_cv =
        c.critical == CriticalSource::Pearson ? pearson_quantile(a, 1.0 - c.alpha) : 0.0;
    for (std::size_t mi = 0; mi < M; ++mi) {
      const AlternativeModel model = c.models[mi].build();
      for (std::size_t ni = 0; ni < N; ++ni) {
        const std::size_t n = c.n_grid[ni];
        const double cv =
            c.critical == CriticalSource::Pearson
                ? pearson_cv
                : null_quantiles(a.value(), n, c.null_reps, {1.0 - c.alpha}, c.seed, c.workers,
                                 kNullCellBase + static_cast<std::uint32_t>(ai * N + ni))
                      .front();
        const std::uint32_t cell = cell_id(ai, mi, ni, M, N);
        std::vector<char> reject(c.reps);
        parallel_for(static_cast<std::size_t>(c.reps), c.workers, [&](std::size_t r) {
          CounterRng rng(c.seed, cell, static_cast<std::uint32_t>(r));
          reject[r] = statistic(Sample(draw_sample(model, n, rng)), a) > cv;
        });
        const double p = static_cast<double>(std::count(reject.begin(), reject.end(), 1)) / c.reps;
        result.records.push_back(make_record(c, a.value(), &c.models[mi], n, "rejection_rate", p,
                                             rate_stderr(p, c.reps), 0));
      }
    }
  }
  return result;
}

StudyResult coverage_study(const StudyConfig& c) {
  c.validate();
  StudyResult result;
  const std::size_t M = c.models.size();
  const std::size_t N = c.n_grid.size();
  for (std::size_t ai = 0; ai < c.a_grid.size(); ++ai) {
    const TuningParam a(c.a_grid[ai]);
    for (std::size_t mi = 0; mi < M; ++mi) {
      const AlternativeModel model = c.models[mi].build();
      const double target = true_delta(c.models[mi], a.value());
      for (std::size_t ni = 0; ni < N; ++ni) {
        const std::size_t n = c.n_grid[ni];
        const std::uint32_t cell = cell_id(ai, mi, ni, M, N);
        // 1 covered, 0 missed, 2 degenerate variance estimate.
        std::vector<char> outcome(c.reps);
        parallel_for(static_cast<std::size_t>(c.reps), c.workers, [&](std::size_t r) {
          CounterRng rng(c.seed, cell, static_cast<std::uint32_t>(r));
          const VarianceEstimate v = variance_estimate(Sample(draw_sample(model, n, rng)), a);
          if (!(v.sigma2_hat >= kDegenerateVariance)) {
            outcome[r] = 2;
            return;
          }
          const ConfidenceInterval ci = confidence_interval(v, n, c.alpha);
          outcome[r] = ci.lower <= target && target <= ci.upper;
        });
        const int covered = static_cast<int>(std::count(outcome.begin(), outcome.end(), 1));
        const int degenerate = static_cast<int>(std::count(outcome.begin(), outcome.end(), 2));
        const double p = static_cast<double>(covered) / c.reps;
        result.records.push_back(make_record(c, a.value(), &c.models[mi], n, "coverage", p,
                                             rate_stderr(p, c.reps), degenerate));
      }
    }
  }
  return result;
}

StudyResult limit_table(const StudyConfig& c) {
  c.validate();
  StudyResult result;
  const std::size_t M = c.models.size();
  const std::size_t N = c.n_grid.size();
  for (std::size_t ai = 0; ai < c.a_grid.size(); ++ai) {
    const TuningParam a(c.a_grid[ai]);
    for (std::size_t mi = 0; mi < M; ++mi) {
      const ModelSpec& spec = c.models[mi];
      const AlternativeModel model = spec.build();
      const double d = true_delta(spec, a.value());
      const double s2 = sigma2(model, a);
      const double s2_dm = sigma2_delta_method(model, a);
      for (std::size_t ni = 0; ni < N; ++ni) {
        const std::size_t n = c.n_grid[ni];
        const std::uint32_t cell = cell_id(ai, mi, ni, M, N);
        std::vector<VarianceEstimate> est(c.reps);
        parallel_for(static_cast<std::size_t>(c.reps), c.workers, [&](std::size_t r) {
          CounterRng rng(c.seed, cell, static_cast<std::uint32_t>(r));
          est[r] = variance_estimate(Sample(draw_sample(model, n, rng)), a);
        });
        auto summarize = [&](auto field) {
          double sum = 0.0;
          double sum2 = 0.0;
          for (const VarianceEstimate& v : est) {
            const double x = field(v);
            sum += x;
            sum2 += x * x;
          }
          const double mean = sum / c.reps;
          const double var = c.reps > 1 ? (sum2 - c.reps * mean * mean) / (c.reps - 1) : 0.0;
          return std::tuple{mean, std::sqrt(std::max(var, 0.0) / c.reps), std::max(var, 0.0)};
        };
        const auto [tn, tn_se, tn_var] = summarize([](const VarianceEstimate& v) { return v.t_over_n(); });
        [[maybe_unused]] const auto [sh, sh_se, sh_var] =
            summarize([](const VarianceEstimate& v) { return v.sigma2_hat; });
        // Standard error of a normal-theory sample variance: var sqrt(2 / (reps - 1)).
        const double nv = static_cast<double>(n) * tn_var;
        const double nv_se = c.reps > 1 ? nv * std::sqrt(2.0 / (c.reps - 1)) : 0.0;
        result.records.push_back(make_record(c, a.value(), &spec, n, "delta", d, 0.0, 0));
        result.records.push_back(make_record(c, a.value(), &spec, n, "t_over_n", tn, tn_se, 0));
        result.records.push_back(make_record(c, a.value(), &spec, n, "sigma2", s2, 0.0, 0));
        result.records.push_back(make_record(c, a.value(), &spec, n, "sigma2_hat", sh, sh_se, 0));
        result.records.push_back(make_record(c, a.value(), &spec, n, "sigma2_delta_method", s2_dm, 0.0, 0));
        result.records.push_back(make_record(c, a.value(), &spec, n, "n_var_t_over_n", nv, nv_se, 0));
      }
    }
  }
  return result;
}

StudyResult null_quantile_study(const StudyConfig& c) {
  c.validate();
  StudyResult result;
  const std::size_t N = c.n_grid.size();
  for (std::size_t ai = 0; ai < c.a_grid.size(); ++ai) {
    for (std::size_t ni = 0; ni < N; ++ni) {
      const std::size_t n = c.n_grid[ni];
      const std::vector<double> q =
          null_quantiles(c.a_grid[ai], n, c.reps, c.quantiles, c.seed, c.workers,
                         kNullCellBase + static_cast<std::uint32_t>(ai * N + ni));
      for (std::size_t k = 0; k < q.size(); ++k) {
        std::ostringstream metric;
        metric << "quantile_" << c.quantiles[k];
        result.records.push_back(make_record(c, c.a_grid[ai], nullptr, n, metric.str(), q[k],
                                             std::numeric_limits<double>::quiet_NaN(), 0));
      }
    }
  }
  return result;
}

StudyResult run_study(const StudyConfig& c) {
  switch (c.kind) {
    case StudyKind::Power: return power_study(c);
    case StudyKind::Coverage: return coverage_study(c);
    case StudyKind::Limit: return limit_table(c);
    case StudyKind::NullQuantiles: return null_quantile_study(c);
  }
  throw std::invalid_argument("unknown study kind");
}

void write_json(std::ostream& out, const StudyResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const StudyRecord& r : result.records) {
    nlohmann::json row{{"study", r.study},       {"a", r.a},
                       {"model", r.model},       {"theta", r.theta},
                       {"beta", r.beta},         {"n", r.n},
                       {"metric", r.metric},     {"estimate", r.estimate},
                       {"reps", r.reps},         {"degenerate", r.degenerate}};
    // JSON has no NaN; an unknown standard error is null.
    row["mc_stderr"] = std::isfinite(r.mc_stderr) ? nlohmann::json(r.mc_stderr) : nlohmann::json();
    rows.push_back(std::move(row));
  }
  out << nlohmann::json{{"records", rows}}.dump(2) << '\n';
}

void write_csv(std::ostream& out, const StudyResult& result) {
  out << "study,a,model,theta,beta,n,metric,estimate,mc_stderr,reps,degenerate\n";
  out << std::setprecision(10);
  for (const StudyRecord& r : result.records) {
    out << r.study << ',' << r.a << ",\"" << r.model << "\"," << r.theta << ',' << r.beta << ','
        << r.n << ',' << r.metric << ',' << r.estimate << ',';
    if (std::isfinite(r.mc_stderr)) out << r.mc_stderr;
    out << ',' << r.reps << ',' << r.degenerate << '\n';
  }
}

}  // namespace mrl
