#ifndef MRL_MC_HPP_
#define MRL_MC_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrl/alternatives.hpp"

namespace mrl {

// A concrete alternative written as `family=gamma_bb beta=3` or
// `family=weibull theta=0.2`.
struct ModelSpec {
  Family family = Family::Exponential;
  double theta = 0.0;
  double beta = 3.0;

  AlternativeModel build() const { return AlternativeModel(family, theta, beta); }
  std::string describe() const { return build().describe(); }
};

// Parses whitespace-separated key=value tokens (family, theta, beta).
// Throws std::invalid_argument on unknown keys or values.
ModelSpec parse_model(const std::string& text);

enum class StudyKind { Power, Coverage, Limit, NullQuantiles };
enum class CriticalSource { Pearson, Empirical };

struct StudyConfig {
  StudyKind kind = StudyKind::Power;
  std::vector<double> a_grid;
  std::vector<ModelSpec> models;
  std::vector<std::size_t> n_grid;
  int reps = 10000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  CriticalSource critical = CriticalSource::Pearson;
  int null_reps = 20000;                      // empirical critical values
  std::vector<double> quantiles{0.9, 0.95, 0.99};  // null-quantile study

  // Throws std::invalid_argument when a grid is empty or a value is out of range.
  void validate() const;
};

std::string_view to_string(StudyKind kind);
StudyKind parse_study_kind(std::string_view name);

// One tidy row. Rate metrics carry mc_stderr = sqrt(p(1-p)/reps); means carry
// the standard error of the mean; exact quantities carry 0.
struct StudyRecord {
  std::string study;
  double a;
  std::string model;
  double theta;
  double beta;
  std::size_t n;
  std::string metric;
  double estimate;
  double mc_stderr;
  int reps;
  int degenerate;  // replications with a degenerate variance estimate
};

struct StudyResult {
  std::vector<StudyRecord> records;
};

// Empirical q-quantiles of T_{n,a} under Exp(1); replication r uses stream
// (seed, cell, r).
std::vector<double> null_quantiles(double a, std::size_t n, int reps,
                                   const std::vector<double>& q, std::uint64_t seed,
                                   unsigned workers = 0, std::uint32_t cell = 0);

// Rejection rates of T_{n,a} > c_{1-alpha} per (a, model, n).
StudyResult power_study(const StudyConfig& config);
// Frequencies of I_{n,a} containing the true Delta_a per (a, model, n).
// Degenerate variance estimates count as non-coverage.
StudyResult coverage_study(const StudyConfig& config);
// Averages of T/n and sigma_hat^2 next to the true Delta_a and sigma_a^2,
// plus the delta-method variance and the simulated n Var(T/n).
StudyResult limit_table(const StudyConfig& config);
StudyResult null_quantile_study(const StudyConfig& config);
StudyResult run_study(const StudyConfig& config);

void write_json(std::ostream& out, const StudyResult& result);
void write_csv(std::ostream& out, const StudyResult& result);

}  // namespace mrl

#endif  // MRL_MC_HPP_
