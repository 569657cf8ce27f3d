#include "mrl/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrl/parallel.hpp"
#include "mrl/rng.hpp"

namespace mrl {

CumulantSet cumulants(TuningParam tuning) {
  const double a = tuning.value();
  const double k1 = 1.0 / ((a + 1.0) * (a + 2.0));
  const double k2 = 2.0 / ((a * a + 3.0 * a + 2.0) * (2.0 * a + 3.0) * (a + 2.0));
  const double k3 =
      16.0 / ((1.0 + a) * (2.0 * a + 3.0) * std::pow(a + 2.0, 3) * (3.0 * a + 4.0));
  const double k4 = 48.0 * (11.0 * a + 16.0) /
                    ((3.0 * a + 4.0) * std::pow(2.0 * a + 3.0, 2) * std::pow(a + 2.0, 4) *
                     (1.0 + a) * (4.0 * a + 5.0));
  return {a, {k1, k2, k3, k4}};
}

double NullKernel::operator()(double s, double t) const {
  return std::exp(-std::max(s, t)) - std::exp(-(s + t));
}

namespace {

// tr(B^j), j = 1..4, for B = D^{1/2} K D^{1/2} on an n-point grid, t = -log(u)/c.
std::array<double, 4> kernel_traces(double a, int n) {
  const GaussRule rule = gauss_legendre(n);
  const double c = std::max(a, 1.0);
  std::vector<double> t(n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    t[i] = -std::log(u) / c;
    sw[i] = std::sqrt(0.5 * rule.weights[i] * std::exp(-a * t[i]) / (c * u));
  }
  const NullKernel k0;
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[i * n + j] = sw[i] * k0(t[i], t[j]) * sw[j];
  }
  double tr1 = 0.0;
  double tr2 = 0.0;
  for (int i = 0; i < n; ++i) {
    tr1 += b[i * n + i];
    for (int j = 0; j < n; ++j) tr2 += b[i * n + j] * b[i * n + j];
  }
  // B^2 once; tr(B^3) = <B^2, B>, tr(B^4) = <B^2, B^2> since B is symmetric.
  std::vector<double> b2(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const double bil = b[i * n + l];
      for (int j = 0; j < n; ++j) b2[i * n + j] += bil * b[l * n + j];
    }
  }
  double tr3 = 0.0;
  double tr4 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    tr3 += b2[i] * b[i];
    tr4 += b2[i] * b2[i];
  }
  return {tr1, tr2, tr3, tr4};
}

}  // namespace

double iterated_kernel_cumulant(TuningParam a, int j, int points) {
  if (j < 1 || j > 4) throw std::invalid_argument("cumulant order must be 1, 2, 3 or 4");
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  const double coarse = kernel_traces(a.value(), points)[j - 1];
  const double fine = kernel_traces(a.value(), 2 * points)[j - 1];
  const double factor = std::pow(2.0, j - 1) * std::tgamma(static_cast<double>(j));
  return factor * (4.0 * fine - coarse) / 3.0;
}

EigenSpectrum eigen_spectrum(TuningParam a, int count) {
  if (count < 1) throw std::invalid_argument("eigenvalue count must be positive");
  const BesselOrder order = BesselOrder::from_tuning(a.value());
  EigenSpectrum out{a.value(), order.value(), {}, {}};
  out.zeros.reserve(count);
  out.lambdas.reserve(count);
  for (int k = 1; k <= count; ++k) {
    const double z = bessel_zero(order, k);
    out.zeros.push_back(z);
    const double r = 2.0 * order.value() / z;
    out.lambdas.push_back(r * r);
  }
  return out;
}

double eigenfunction(TuningParam a, int k, double t) {
  if (k < 1) throw std::invalid_argument("eigenfunction index must be positive");
  if (t < 0.0) throw std::invalid_argument("eigenfunction argument must be nonnegative");
  const BesselOrder order = BesselOrder::from_tuning(a.value());
  const double nu = order.value();
  const double z = bessel_zero(order, k);
  return bessel_j(nu, z * std::exp(-t / (2.0 * nu))) /
         (std::sqrt(nu) * bessel_j(nu - 1.0, z)) * std::exp(-t / 2.0);
}

PearsonMoments pearson_moments(const CumulantSet& c) {
  const auto& k = c.kappa;
  return {k[0], k[1], k[2] / std::pow(k[1], 1.5), 3.0 + k[3] / (k[1] * k[1])};
}

PearsonDistribution null_pearson(TuningParam a) {
  return PearsonDistribution(pearson_moments(cumulants(a)));
}

double pearson_quantile(TuningParam a, double q) { return null_pearson(a).quantile(q); }

double pearson_p_value(TuningParam a, double t) {
  return std::clamp(1.0 - null_pearson(a).cdf(t), 0.0, 1.0);
}

namespace {

// Type 7 sample quantile (linear interpolation between order statistics).
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<double> series_quantiles(TuningParam a, const std::vector<double>& q, int terms,
                                     int reps, std::uint64_t seed, unsigned workers) {
  if (terms < 1) throw std::invalid_argument("terms must be positive");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  for (double level : q) {
    if (!(level > 0.0 && level < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
  }
  const std::vector<double> lambda = eigen_spectrum(a, terms).lambdas;
  double shift = cumulants(a).kappa[0];
  for (double l : lambda) shift -= l;

  std::vector<double> draws(reps);
  parallel_for(static_cast<std::size_t>(reps), workers, [&](std::size_t r) {
    CounterRng rng(seed, 0, static_cast<std::uint32_t>(r));
    double sum = shift;
    // Marsaglia polar method: each accepted point gives two independent
    // chi2_1 draws u^2 f and v^2 f without trigonometric calls.
    for (int k = 0; k < terms; k += 2) {
      double u, v, s;
      do {
        u = 2.0 * rng.uniform() - 1.0;
        v = 2.0 * rng.uniform() - 1.0;
        s = u * u + v * v;
      } while (s >= 1.0 || s == 0.0);
      const double f = -2.0 * std::log(s) / s;
      sum += lambda[k] * u * u * f;
      if (k + 1 < terms) sum += lambda[k + 1] * v * v * f;
    }
    draws[r] = sum;
  });
  std::sort(draws.begin(), draws.end());
  std::vector<double> out;
  out.reserve(q.size());
  for (double level : q) out.push_back(sorted_quantile(draws, level));
  return out;
}

double series_quantile(TuningParam a, double q, int terms, int reps, std::uint64_t seed,
                       unsigned workers) {
  return series_quantiles(a, {q}, terms, reps, seed, workers).front();
}

}  // namespace mrl
