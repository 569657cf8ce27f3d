#include "mrl/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "mrl/error.hpp"

namespace mrl {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive and "
                                "max_subdivisions >= 1");
  }
}

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw std::invalid_argument("BesselOrder: nu must lie in (0, 1], got " +
                                std::to_string(nu));
  }
}

namespace {

struct Kronrod21 {
  std::array<double, 11> x;   // x[0] = 0, ascending
  std::array<double, 11> wk;  // Kronrod weights
  std::array<double, 5> wg;   // Gauss weights for x[1], x[3], ..., x[9]
};

const Kronrod21& kronrod21() {
  static const Kronrod21 rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    Kronrod21 r{};
    const auto& ax = gauss_kronrod<double, 21>::abscissa();
    const auto& wk = gauss_kronrod<double, 21>::weights();
    const auto& wg = gauss<double, 10>::weights();
    std::copy(ax.begin(), ax.end(), r.x.begin());
    std::copy(wk.begin(), wk.end(), r.wk.begin());
    std::copy(wg.begin(), wg.end(), r.wg.begin());
    return r;
  }();
  return rule;
}

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
};

Segment gauss_kronrod_21(const Integrand& f, double lo, double hi) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const Kronrod21& r = kronrod21();
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 11> f1{};
  std::array<double, 11> f2{};
  const double fc = f(center);
  double res_k = r.wk[0] * fc;
  double res_g = 0.0;
  double res_abs = r.wk[0] * std::abs(fc);
  for (std::size_t j = 1; j < 11; ++j) {
    const double dx = half * r.x[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    res_k += r.wk[j] * pair;
    res_abs += r.wk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) res_g += r.wg[(j - 1) / 2] * pair;
  }
  if (!std::isfinite(res_k)) {
    throw NonConvergence("integrate: non-finite integrand on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  const double mean = 0.5 * res_k;
  double res_asc = r.wk[0] * std::abs(fc - mean);
  for (std::size_t j = 1; j < 11; ++j) {
    res_asc += r.wk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double scale = std::abs(half);
  res_abs *= scale;
  res_asc *= scale;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return {lo, hi, res_k * half, err};
}

QuadratureResult adaptive(const Integrand& f, double lo, double hi,
                          const QuadratureSpec& spec) {
  spec.validate();
  if (lo == hi) return {0.0, 0.0, 0};
  if (lo > hi) {
    QuadratureResult r = adaptive(f, hi, lo, spec);
    r.value = -r.value;
    return r;
  }
  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod_21(f, lo, hi));
  while (true) {
    double value = 0.0;
    double error = 0.0;
    for (const Segment& s : heap) {
      value += s.value;
      error += s.error;
    }
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    const int count = static_cast<int>(heap.size());
    if (error <= target) return {value, error, count};
    if (count >= spec.max_subdivisions) {
      throw NonConvergence("integrate: error estimate " + std::to_string(error) +
                           " above tolerance " + std::to_string(target) + " after " +
                           std::to_string(count) + " subdivisions");
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw NonConvergence("integrate: interval cannot be bisected further");
    }
    heap.push_back(gauss_kronrod_21(f, worst.lo, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(gauss_kronrod_21(f, mid, worst.hi));
    std::push_heap(heap.begin(), heap.end(), worse);
  }
}

}  // namespace

QuadratureResult integrate_with_error(const Integrand& f, Interval domain,
                                      const QuadratureSpec& spec) {
  return adaptive(f, domain.lo, domain.hi, spec);
}

QuadratureResult integrate_with_error(const Integrand& f, HalfLine domain,
                                      const QuadratureSpec& spec) {
  if (!(domain.rate > 0.0)) throw std::invalid_argument("HalfLine: rate must be positive");
  const double lo = domain.lo;
  const double c = domain.rate;
  auto mapped = [&f, lo, c](double u) {
    const double t = lo - std::log(u) / c;
    const double v = f(t);
    return v == 0.0 ? 0.0 : v / (c * u);
  };
  return adaptive(mapped, 0.0, 1.0, spec);
}

double integrate(const Integrand& f, Interval domain, const QuadratureSpec& spec) {
  return integrate_with_error(f, domain, spec).value;
}

double integrate(const Integrand& f, HalfLine domain, const QuadratureSpec& spec) {
  return integrate_with_error(f, domain, spec).value;
}

double bessel_j(double nu, double x) {
  if (x < 0.0) throw std::domain_error("bessel_j: x must be nonnegative");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_j(nu, x);
}

double bessel_zero(BesselOrder order, int k) {
  if (k < 1) throw std::invalid_argument("bessel_zero: k must be >= 1");
  const double nu = order.value();
  const double mu = 4.0 * nu * nu;
  const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
  const double b8 = 8.0 * beta;
  const double guess = beta - (mu - 1.0) / b8 -
                       4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(b8, 3)) -
                       32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
                           (15.0 * std::pow(b8, 5));

  // Consecutive zeros are more than two units apart for nu in (0, 1].
  double lo = std::max(guess - 0.5, 1e-3);
  double hi = guess + 0.5;
  double f_lo = bessel_j(nu, lo);
  const double f_hi = bessel_j(nu, hi);
  if (f_lo * f_hi > 0.0) {
    throw NonConvergence("bessel_zero: no sign change around McMahon estimate");
  }

  double x = guess;
  for (int iter = 0; iter < 100; ++iter) {
    const double fx = bessel_j(nu, x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
    }
    const double slope = 0.5 * (bessel_j(nu - 1.0, x) - bessel_j(nu + 1.0, x));
    double next = x - fx / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * next ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    x = next;
  }
  throw NonConvergence("bessel_zero: Newton iteration did not converge");
}

double gamma_function(double x) { return std::tgamma(x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  if (p < 0.5) return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * (1.0 - p));
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  const std::vector<double> positive = boost::math::legendre_p_zeros<double>(n);
  GaussRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(n));
  rule.weights.reserve(static_cast<std::size_t>(n));
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
    rule.weights.push_back(weight(*it));
  }
  for (double x : positive) {
    rule.nodes.push_back(x);
    rule.weights.push_back(weight(x));
  }
  return rule;
}

}  // namespace mrl
