#ifndef MRL_INFERENCE_HPP_
#define MRL_INFERENCE_HPP_

#include <array>
#include <cstddef>

#include "mrl/statistic.hpp"

namespace mrl {

// upsilon_l(x, y) = \int_0^{x^y} w_l(t) e^{-a t} dt with w_1 = y-t-1,
// w_2 = t(y-t-1), w_3 = (x-t-1)(y-t-1). Evaluated through the stable
// truncated moments, so it is accurate uniformly in a >= 0.
double upsilon(int ell, TuningParam a, double x, double y);

// The same functions in the expanded closed forms (a > 0) and polynomial
// limits (a = 0). They lose digits as a -> 0 and serve as a cross-check.
double upsilon_closed_form(int ell, TuningParam a, double x, double y);

struct VarianceEstimate {
  double sigma2_hat;
  std::array<double, 6> s;  // S_1n .. S_6n
  double tau2;

  double t_over_n() const { return s[5]; }
};

enum class VarianceMethod {
  Sorted,     // O(n log n): l-sums collapsed by prefix/suffix sums over sorted data
  TripleSum,  // literal O(n^3) sums, kept as a reference
};

// Plug-in estimator of sigma_a^2 built from the scaled sample. The triple-sum
// method refuses samples larger than `triple_sum_limit`. Throws DataError for n < 2.
VarianceEstimate variance_estimate(const Sample& sample, TuningParam a,
                                   VarianceMethod method = VarianceMethod::Sorted,
                                   std::size_t triple_sum_limit = 2000);

// Variance estimates below this are treated as degenerate.
inline constexpr double kDegenerateVariance = 1e-12;

// sqrt(n) (T/n - delta_ref) / sigma_hat. Throws DegenerateVariance.
double standardized_statistic(const Sample& sample, TuningParam a, double delta_ref);

struct ConfidenceInterval {
  double lower;
  double upper;
  double level;
};

// T/n -+ u sigma_hat / sqrt(n), u = Phi^{-1}(1 - alpha/2).
ConfidenceInterval confidence_interval(const Sample& sample, TuningParam a, double alpha);
ConfidenceInterval confidence_interval(const VarianceEstimate& estimate, std::size_t n,
                                       double alpha);

struct NeighbourhoodResult {
  bool reject;       // true: conclude Delta_a < delta_tilde
  double statistic;  // T_{n,a}
  double threshold;  // n delta_tilde - sqrt(n) sigma_hat Phi^{-1}(1 - alpha)
};

// Test of H: Delta_a >= delta_tilde against Delta_a < delta_tilde.
NeighbourhoodResult neighbourhood_test(const Sample& sample, TuningParam a, double delta_tilde,
                                       double alpha);

}  // namespace mrl

#endif  // MRL_INFERENCE_HPP_
