#ifndef MRL_NULL_DIST_HPP_
#define MRL_NULL_DIST_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "mrl/pearson.hpp"
#include "mrl/special.hpp"
#include "mrl/statistic.hpp"

namespace mrl {

// Cumulants kappa_1..kappa_4 of the limit law ||Z||^2 = sum_k lambda_k N_k^2.
struct CumulantSet {
  double a;
  std::array<double, 4> kappa;
};

CumulantSet cumulants(TuningParam a);

// Null covariance kernel e^{-max(s,t)} - e^{-(s+t)}.
struct NullKernel {
  double operator()(double s, double t) const;
};

// kappa_j from the trace of the j-th iterate of the null kernel in the
// weighted space, discretised on a transformed Gauss grid.
// `points` is the size of the coarse grid; the result is the Richardson
// combination of that grid and one twice as fine (the kernel has a kink on
// the diagonal, so the plain rule converges like points^-2).
double iterated_kernel_cumulant(TuningParam a, int j, int points = 200);

struct EigenSpectrum {
  double a;
  double nu;
  std::vector<double> zeros;
  std::vector<double> lambdas;
};

EigenSpectrum eigen_spectrum(TuningParam a, int count);

// k-th eigenfunction of the null kernel, unit norm in L^2(e^{-a t} dt):
// J_nu(z_k e^{-t/(2 nu)}) e^{-t/2} / (sqrt(nu) J_{nu-1}(z_k)). The e^{-t/2}
// factor comes from sqrt(x) J_nu(z x^{1/(2 nu)}) with x = e^{-t}; a factor
// e^{-a t/2} agrees with it only at a = 1 and breaks the eigen-identity.
double eigenfunction(TuningParam a, int k, double t);

PearsonMoments pearson_moments(const CumulantSet& c);
PearsonDistribution null_pearson(TuningParam a);
double pearson_quantile(TuningParam a, double q);
// Approximate upper-tail probability P(||Z||^2 > t) under the Pearson fit.
double pearson_p_value(TuningParam a, double t);

// Empirical quantiles of sum_{k <= terms} lambda_k chi2_1 + (kappa_1 - sum lambda_k),
// simulated with counter-based streams; reproducible for any worker count.
std::vector<double> series_quantiles(TuningParam a, const std::vector<double>& q, int terms,
                                     int reps, std::uint64_t seed, unsigned workers = 0);
double series_quantile(TuningParam a, double q, int terms, int reps, std::uint64_t seed,
                       unsigned workers = 0);

}  // namespace mrl

#endif  // MRL_NULL_DIST_HPP_
