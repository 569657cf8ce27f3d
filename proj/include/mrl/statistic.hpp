#ifndef MRL_STATISTIC_HPP_
#define MRL_STATISTIC_HPP_

#include <span>
#include <vector>

namespace mrl {

// Strictly positive observations with their cached mean.
class Sample {
 public:
  // Throws DataError on empty input or any value that is not finite and > 0.
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double mean() const { return mean_; }

 private:
  std::vector<double> values_;
  double mean_;
};

// Y_j = X_j / mean(X); the entries average to one.
class ScaledSample {
 public:
  std::span<const double> values() const { return y_; }
  std::size_t size() const { return y_.size(); }

 private:
  friend ScaledSample scale(const Sample& sample);
  explicit ScaledSample(std::vector<double> y) : y_(std::move(y)) {}
  std::vector<double> y_;
};

// Decay rate a >= 0 of the weight exp(-a t).
class TuningParam {
 public:
  explicit TuningParam(double a);
  double value() const { return a_; }

 private:
  double a_;
};

ScaledSample scale(const Sample& sample);

// I_k = \int_0^m t^k e^{-a t} dt for k = 0, 1, 2. Stable for every a*m >= 0:
// I_2 by power series when a*m < 1, then downward recurrence (all terms
// positive).
struct TruncatedMoments {
  double i0;
  double i1;
  double i2;
};
TruncatedMoments truncated_moments(double a, double m);

// Pair kernel \int_0^{x^y} (x-t-1)(y-t-1) e^{-a t} dt. T_{n,a} is the mean
// of this kernel over all ordered pairs, times n.
double pair_kernel(double a, double x, double y);

// T_{n,a} via the sorted O(n log n) evaluation of the pairwise double sum.
double statistic(const Sample& sample, TuningParam a);

// Same value through the symmetrised O(n^2) double sum (j <= k, off-diagonal
// terms doubled), accumulated in fixed-size blocks in index order.
double statistic_pairwise(const Sample& sample, TuningParam a);

// G_{n,a} by adaptive quadrature of its defining integral, split at the
// order statistics. Independent of the pair-kernel algebra.
double statistic_g_oracle(const Sample& sample, TuningParam a);

namespace detail {
// sum_{j,k} pair_kernel(a, y_j, y_k) for ascending `sorted`.
double sorted_pair_sum(std::span<const double> sorted, double a);
}  // namespace detail

}  // namespace mrl

#endif  // MRL_STATISTIC_HPP_
