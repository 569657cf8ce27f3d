#include "mrl/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mrl/error.hpp"
#include "mrl/special.hpp"

namespace mrl {

Sample::Sample(std::vector<double> values) : values_(std::move(values)), mean_(0.0) {
  if (values_.empty()) throw DataError("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw DataError("observation " + std::to_string(i + 1) +
                      " is not a finite positive number");
    }
  }
  mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) /
          static_cast<double>(values_.size());
}

TuningParam::TuningParam(double a) : a_(a) {
  if (!std::isfinite(a) || a < 0.0) {
    throw std::invalid_argument("tuning parameter a must be finite and >= 0");
  }
}

ScaledSample scale(const Sample& sample) {
  std::vector<double> y(sample.values().begin(), sample.values().end());
  const double mean = sample.mean();
  for (double& v : y) v /= mean;
  return ScaledSample(std::move(y));
}

TruncatedMoments truncated_moments(double a, double m) {
  if (m <= 0.0) return {0.0, 0.0, 0.0};
  const double x = a * m;
  const double e = std::exp(-x);
  double i2;
  if (x < 1.0) {
    // I_2 = m^3 sum_r (-x)^r / (r! (r + 3))
    double term = 1.0;
    double sum = 1.0 / 3.0;
    for (int r = 1; r < 40; ++r) {
      term *= -x / r;
      const double add = term / (r + 3);
      sum += add;
      if (std::abs(add) < 1e-17 * sum) break;
    }
    i2 = m * m * m * sum;
  } else {
    i2 = (2.0 - e * (x * x + 2.0 * x + 2.0)) / (a * a * a);
  }
  const double i1 = 0.5 * (a * i2 + m * m * e);
  const double i0 = a * i1 + m * e;
  return {i0, i1, i2};
}

double pair_kernel(double a, double x, double y) {
  const TruncatedMoments t = truncated_moments(a, std::min(x, y));
  return (x - 1.0) * (y - 1.0) * t.i0 - (x + y - 2.0) * t.i1 + t.i2;
}

namespace detail {

double sorted_pair_sum(std::span<const double> sorted, double a) {
  const std::size_t n = sorted.size();
  double diagonal = 0.0;
  double upper = 0.0;
  double tail = 0.0;  // sum_{l > i} (y_l - 1)
  for (std::size_t k = n; k-- > 0;) {
    const double yi = sorted[k];
    const double p = yi - 1.0;
    const TruncatedMoments t = truncated_moments(a, yi);
    const double count = static_cast<double>(n - 1 - k);
    diagonal += p * p * t.i0 - 2.0 * p * t.i1 + t.i2;
    upper += p * t.i0 * tail - (p * count + tail) * t.i1 + count * t.i2;
    tail += p;
  }
  return diagonal + 2.0 * upper;
}

}  // namespace detail

double statistic(const Sample& sample, TuningParam a) {
  ScaledSample scaled = scale(sample);
  std::vector<double> y(scaled.values().begin(), scaled.values().end());
  std::sort(y.begin(), y.end());
  return detail::sorted_pair_sum(y, a.value()) / static_cast<double>(y.size());
}

double statistic_pairwise(const Sample& sample, TuningParam a) {
  const ScaledSample scaled = scale(sample);
  const auto y = scaled.values();
  const std::size_t n = y.size();
  constexpr std::size_t kBlock = 64;
  std::vector<double> partials((n + kBlock - 1) / kBlock, 0.0);
  for (std::size_t b = 0; b < partials.size(); ++b) {
    double acc = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t j = b * kBlock; j < end; ++j) {
      acc += pair_kernel(a.value(), y[j], y[j]);
      for (std::size_t k = j + 1; k < n; ++k) acc += 2.0 * pair_kernel(a.value(), y[j], y[k]);
    }
    partials[b] = acc;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total / static_cast<double>(n);
}

double statistic_g_oracle(const Sample& sample, TuningParam a) {
  const ScaledSample scaled = scale(sample);
  std::vector<double> y(scaled.values().begin(), scaled.values().end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  const double rate = a.value();

  auto integrand = [&y, n, rate](double z) {
    double min_sum = 0.0;
    double below = 0.0;
    for (double v : y) {
      min_sum += std::min(v, z);
      if (v <= z) below += 1.0;
    }
    const double d = (min_sum - below) / n;
    return d * d * std::exp(-rate * z);
  };

  const QuadratureSpec spec{1e-15, 1e-12, 200};
  double total = 0.0;
  double left = 0.0;
  for (double right : y) {
    if (right > left) total += integrate(integrand, Interval{left, right}, spec);
    left = right;
  }
  return n * total;
}

}  // namespace mrl
