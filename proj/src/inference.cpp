#include "mrl/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrl/error.hpp"
#include "mrl/special.hpp"

namespace mrl {

double upsilon(int ell, TuningParam a, double x, double y) {
  const TruncatedMoments t = truncated_moments(a.value(), std::min(x, y));
  switch (ell) {
    case 1: return (y - 1.0) * t.i0 - t.i1;
    case 2: return (y - 1.0) * t.i1 - t.i2;
    case 3: return (x - 1.0) * (y - 1.0) * t.i0 - (x + y - 2.0) * t.i1 + t.i2;
    default: throw std::invalid_argument("upsilon index must be 1, 2 or 3");
  }
}

double upsilon_closed_form(int ell, TuningParam tuning, double x_in, double y_in) {
  if (ell < 1 || ell > 3) throw std::invalid_argument("upsilon index must be 1, 2 or 3");
  // Extended precision postpones the a^{-3} cancellation for small a.
  using R = long double;
  const R a = tuning.value();
  const R x = x_in;
  const R y = y_in;
  const R m = std::min(x, y);
  if (a == 0.0L) {
    switch (ell) {
      case 1: return static_cast<double>(-m * (-2 * y + m + 2) / 2);
      case 2: return static_cast<double>(-m * m * (2 * m - 3 * y + 3) / 6);
      default: return static_cast<double>(m * (m * m / 3 + (-x / 2 - y / 2 + 1) * m + (y - 1) * (x - 1)));
    }
  }
  const R e = std::exp(-a * m);
  switch (ell) {
    case 1:
      return static_cast<double>(((a * m + 1 + (1 - y) * a) * e - 1 + (y - 1) * a) / (a * a));
    case 2:
      return static_cast<double>(
          ((m * m * a * a + ((1 - y) * a * a + 2 * a) * m + 2 + (1 - y) * a) * e - 2 + (y - 1) * a) /
          (a * a * a));
    default:
      return static_cast<double>(((-a * a * m * m + a * (-2 + (x + y - 2) * a) * m - 2 -
                                   (y - 1) * (x - 1) * a * a + (x + y - 2) * a) *
                                      e +
                                  2 + (y - 1) * (x - 1) * a * a + (-x - y + 2) * a) /
                                 (a * a * a));
  }
}

namespace {

VarianceEstimate assemble(double s1, double s2, double s3, double s4, double s5, double s6,
                          double tau2) {
  VarianceEstimate v{};
  v.s = {s1, s2, s3, s4, s5, s6};
  v.tau2 = tau2;
  v.sigma2_hat = 4.0 * (s1 + s2 - s3 - 2.0 * s4 * s5 + tau2 * s5 * s5 - s6 * s6);
  return v;
}

VarianceEstimate sorted_estimate(std::vector<double> y, double a) {
  std::sort(y.begin(), y.end());
  const std::size_t n = y.size();
  const double dn = static_cast<double>(n);
  std::vector<TruncatedMoments> mom(n);
  for (std::size_t i = 0; i < n; ++i) mom[i] = truncated_moments(a, y[i]);

  // A_j = sum_l upsilon_1(Y_j, Y_l), B_j = sum_l upsilon_2(Y_j, Y_l): terms
  // with Y_l < Y_j integrate up to Y_l (prefix sums), the rest up to Y_j.
  std::vector<double> suffix(n + 1, 0.0);  // sum_{l >= i} (Y_l - 1)
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + (y[i] - 1.0);

  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0, s5 = 0.0, tau2 = 0.0;
  double prefix_a = 0.0;
  double prefix_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = y[i] - 1.0;
    const double rest = static_cast<double>(n - i);
    const TruncatedMoments& t = mom[i];
    const double aj = prefix_a + t.i0 * suffix[i] - rest * t.i1;
    const double bj = prefix_b + t.i1 * suffix[i] - rest * t.i2;
    s1 += p * p * aj * aj;
    s2 += bj * bj;
    s3 += p * aj * bj;
    s4 += p * p * aj - p * bj;
    s5 += aj;
    tau2 += p * p;
    prefix_a += p * t.i0 - t.i1;
    prefix_b += p * t.i1 - t.i2;
  }
  const double n2 = dn * dn;
  const double n3 = n2 * dn;
  const double s6 = detail::sorted_pair_sum(y, a) / dn / dn;
  return assemble(s1 / n3, s2 / n3, 2.0 * s3 / n3, s4 / n2, s5 / n2, s6, tau2 / dn);
}

VarianceEstimate triple_sum_estimate(const std::vector<double>& y, TuningParam a) {
  const std::size_t n = y.size();
  const double dn = static_cast<double>(n);
  std::vector<double> u1(n * n);
  std::vector<double> u2(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      u1[j * n + k] = upsilon(1, a, y[j], y[k]);
      u2[j * n + k] = upsilon(2, a, y[j], y[k]);
    }
  }
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = y[j] - 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        s1 += p * p * u1[j * n + k] * u1[j * n + l];
        s2 += u2[j * n + k] * u2[j * n + l];
        s3 += p * u2[j * n + k] * u1[j * n + l];
      }
    }
  }
  double s4 = 0.0, s5 = 0.0, s6 = 0.0, tau2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = y[j] - 1.0;
    tau2 += p * p;
    for (std::size_t k = 0; k < n; ++k) {
      s4 += p * p * u1[j * n + k] - p * u2[j * n + k];
      s5 += u1[j * n + k];
      s6 += upsilon(3, a, y[j], y[k]);
    }
  }
  const double n2 = dn * dn;
  const double n3 = n2 * dn;
  return assemble(s1 / n3, s2 / n3, 2.0 * s3 / n3, s4 / n2, s5 / n2, s6 / n2, tau2 / dn);
}

}  // namespace

VarianceEstimate variance_estimate(const Sample& sample, TuningParam a, VarianceMethod method,
                                   std::size_t triple_sum_limit) {
  if (sample.size() < 2) throw DataError("variance estimate needs at least two observations");
  const ScaledSample scaled = scale(sample);
  std::vector<double> y(scaled.values().begin(), scaled.values().end());
  if (method == VarianceMethod::Sorted) return sorted_estimate(std::move(y), a.value());
  if (y.size() > triple_sum_limit) {
    throw std::invalid_argument("sample of size " + std::to_string(y.size()) +
                                " exceeds the triple-sum limit " +
                                std::to_string(triple_sum_limit));
  }
  return triple_sum_estimate(y, a);
}

namespace {

double checked_sigma(const VarianceEstimate& v) {
  if (!(v.sigma2_hat >= kDegenerateVariance)) {
    throw DegenerateVariance("variance estimate " + std::to_string(v.sigma2_hat) +
                             " is below the degeneracy threshold");
  }
  return std::sqrt(v.sigma2_hat);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

double standardized_statistic(const Sample& sample, TuningParam a, double delta_ref) {
  const VarianceEstimate v = variance_estimate(sample, a);
  const double sigma = checked_sigma(v);
  return std::sqrt(static_cast<double>(sample.size())) * (v.t_over_n() - delta_ref) / sigma;
}

ConfidenceInterval confidence_interval(const VarianceEstimate& v, std::size_t n, double alpha) {
  check_alpha(alpha);
  const double sigma = checked_sigma(v);
  const double half = normal_quantile(1.0 - alpha / 2.0) * sigma / std::sqrt(static_cast<double>(n));
  return {v.t_over_n() - half, v.t_over_n() + half, 1.0 - alpha};
}

ConfidenceInterval confidence_interval(const Sample& sample, TuningParam a, double alpha) {
  check_alpha(alpha);
  return confidence_interval(variance_estimate(sample, a), sample.size(), alpha);
}

NeighbourhoodResult neighbourhood_test(const Sample& sample, TuningParam a, double delta_tilde,
                                       double alpha) {
  check_alpha(alpha);
  if (!(delta_tilde > 0.0)) throw std::invalid_argument("delta_tilde must be positive");
  const VarianceEstimate v = variance_estimate(sample, a);
  const double sigma = checked_sigma(v);
  const double n = static_cast<double>(sample.size());
  const double t = n * v.t_over_n();
  const double threshold = n * delta_tilde - std::sqrt(n) * sigma * normal_quantile(1.0 - alpha);
  return {t <= threshold, t, threshold};
}

}  // namespace mrl
