#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "mrl/error.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/pearson.hpp"
#include "mrl/special.hpp"

namespace {

using mrl::PearsonDistribution;
using mrl::PearsonMoments;
using mrl::PearsonType;

// Mean, variance, skewness, kurtosis from raw moments m1..m4.
PearsonMoments from_raw(double m1, double m2, double m3, double m4) {
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  const double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  return {m1, var, c3 / std::pow(var, 1.5), c4 / (var * var)};
}

// Moments of the fitted law by quadrature of x^k pdf over its support.
std::vector<double> raw_moments_by_quadrature(const PearsonDistribution& d) {
  std::vector<double> out;
  const double lo = d.support_lower();
  const double hi = d.support_upper();
  const double mid = std::isfinite(lo) ? (std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0)
                                      : (std::isfinite(hi) ? hi - 1.0 : d.quantile(0.5));
  for (int k = 1; k <= 4; ++k) {
    auto f = [&](double x) { return std::pow(x, k) * d.pdf(x); };
    // Polynomial tails: map [mid, inf) through x = mid + u/(1-u).
    auto upper = [&](double u) { return f(mid + u / (1 - u)) / ((1 - u) * (1 - u)); };
    auto lower = [&](double u) { return f(mid - u / (1 - u)) / ((1 - u) * (1 - u)); };
    const mrl::QuadratureSpec spec{1e-13, 1e-11, 2000};
    double s = 0.0;
    s += std::isfinite(hi) ? mrl::integrate(f, mrl::Interval{mid, hi}, spec)
                           : mrl::integrate(upper, mrl::Interval{0.0, 1.0 - 1e-12}, spec);
    s += std::isfinite(lo) ? mrl::integrate(f, mrl::Interval{lo, mid}, spec)
                           : mrl::integrate(lower, mrl::Interval{0.0, 1.0 - 1e-12}, spec);
    out.push_back(s);
  }
  return out;
}

void expect_moments_reproduced(const PearsonMoments& m, double tol) {
  const PearsonDistribution d(m);
  const std::vector<double> raw = raw_moments_by_quadrature(d);
  const PearsonMoments got = from_raw(raw[0], raw[1], raw[2], raw[3]);
  EXPECT_NEAR(got.mean, m.mean, tol * std::sqrt(m.variance));
  EXPECT_NEAR(got.variance, m.variance, tol * m.variance);
  EXPECT_NEAR(got.skewness, m.skewness, tol * std::max(1.0, std::abs(m.skewness)));
  EXPECT_NEAR(got.kurtosis, m.kurtosis, tol * m.kurtosis);
}

TEST(Pearson, GammaLawIsTypeThree) {
  const double k = 4.0;
  const double scale = 2.0;
  const PearsonDistribution d({k * scale, k * scale * scale, 2.0 / std::sqrt(k), 3.0 + 6.0 / k});
  EXPECT_EQ(d.type(), PearsonType::III);
  EXPECT_NEAR(d.support_lower(), 0.0, 1e-12);
  for (double x : {0.5, 3.0, 8.0, 15.0, 30.0}) {
    EXPECT_NEAR(d.cdf(x), boost::math::gamma_p(k, x / scale), 1e-9) << x;
  }
  for (double q : {0.1, 0.5, 0.95, 0.99}) {
    EXPECT_NEAR(d.quantile(q), scale * boost::math::gamma_p_inv(k, q), 1e-7) << q;
  }
}

TEST(Pearson, BetaLawIsTypeOne) {
  const double a = 2.0;
  const double b = 5.0;
  const double s = a + b;
  const PearsonMoments m{a / s, a * b / (s * s * (s + 1)),
                         2 * (b - a) * std::sqrt(s + 1) / ((s + 2) * std::sqrt(a * b)),
                         3 + 6 * ((a - b) * (a - b) * (s + 1) - a * b * (s + 2)) / (a * b * (s + 2) * (s + 3))};
  const PearsonDistribution d(m);
  EXPECT_EQ(d.type(), PearsonType::I);
  EXPECT_NEAR(d.support_lower(), 0.0, 1e-10);
  EXPECT_NEAR(d.support_upper(), 1.0, 1e-10);
  for (double x : {0.05, 0.2, 0.5, 0.8}) EXPECT_NEAR(d.cdf(x), boost::math::ibeta(a, b, x), 1e-9) << x;
  for (double q : {0.05, 0.5, 0.9}) EXPECT_NEAR(d.quantile(q), boost::math::ibeta_inv(a, b, q), 1e-7);
}

TEST(Pearson, BetaPrimeLawIsTypeSix) {
  const double a = 3.0;
  const double b = 9.0;
  double raw[4];
  double acc = 1.0;
  for (int k = 0; k < 4; ++k) {
    acc *= (a + k) / (b - 1 - k);
    raw[k] = acc;
  }
  const PearsonDistribution d(from_raw(raw[0], raw[1], raw[2], raw[3]));
  EXPECT_EQ(d.type(), PearsonType::VI);
  EXPECT_NEAR(d.support_lower(), 0.0, 1e-9);
  for (double x : {0.1, 0.3, 0.6, 1.5}) {
    EXPECT_NEAR(d.cdf(x), boost::math::ibeta(a, b, x / (1 + x)), 1e-9) << x;
  }
  for (double q : {0.1, 0.5, 0.95, 0.99}) {
    const double p = boost::math::ibeta_inv(a, b, q);
    EXPECT_NEAR(d.quantile(q), p / (1 - p), 1e-7) << q;
  }
}

TEST(Pearson, InverseGammaLawIsTypeFive) {
  const double a = 9.0;
  const double b = 4.0;
  double raw[4];
  for (int k = 1; k <= 4; ++k) raw[k - 1] = std::pow(b, k) * std::tgamma(a - k) / std::tgamma(a);
  const PearsonDistribution d(from_raw(raw[0], raw[1], raw[2], raw[3]));
  EXPECT_EQ(d.type(), PearsonType::V);
  for (double x : {0.2, 0.4, 0.7, 1.2}) EXPECT_NEAR(d.cdf(x), boost::math::gamma_q(a, b / x), 1e-8) << x;
}

TEST(Pearson, TypeFourReproducesMoments) {
  const PearsonMoments m{1.0, 0.25, 0.5, 5.0};
  EXPECT_EQ(PearsonDistribution(m).type(), PearsonType::IV);
  expect_moments_reproduced(m, 1e-6);
}

TEST(Pearson, EveryTypeReproducesItsMoments) {
  expect_moments_reproduced({0.0, 1.0, 1.0, 4.5}, 1e-6);    // III
  expect_moments_reproduced({0.3, 0.02, 0.4, 2.6}, 1e-6);   // I
  expect_moments_reproduced({2.0, 0.5, 1.5, 8.0}, 1e-6);    // VI
  expect_moments_reproduced({-1.0, 2.0, -0.8, 4.2}, 1e-6);  // reflected
}

TEST(Pearson, NullFitsReproduceCumulants) {
  for (double a : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const PearsonMoments m = mrl::pearson_moments(mrl::cumulants(mrl::TuningParam(a)));
    EXPECT_EQ(mrl::null_pearson(mrl::TuningParam(a)).type(), PearsonType::VI) << a;
    expect_moments_reproduced(m, 1e-6);
  }
}

TEST(Pearson, CdfQuantileRoundTripAndMonotone) {
  const PearsonDistribution d = mrl::null_pearson(mrl::TuningParam(1.0));
  double prev = 0.0;
  for (double q = 0.01; q < 1.0; q += 0.049) {
    const double x = d.quantile(q);
    EXPECT_NEAR(d.cdf(x), q, 1e-8);
    EXPECT_GT(x, prev);
    prev = x;
  }
  EXPECT_EQ(d.cdf(d.support_lower() - 1.0), 0.0);
  EXPECT_EQ(d.pdf(d.support_lower() - 1.0), 0.0);
}

TEST(Pearson, RejectsUnsupportedRegions) {
  EXPECT_THROW(PearsonDistribution({0.0, 1.0, 0.0, 3.0}), mrl::UnsupportedRegion);
  EXPECT_THROW(PearsonDistribution({0.0, 1.0, 1.0, 1.5}), mrl::UnsupportedRegion);
  EXPECT_THROW(PearsonDistribution({0.0, -1.0, 1.0, 5.0}), mrl::UnsupportedRegion);
}

TEST(Pearson, QuantileRejectsBadLevel) {
  const PearsonDistribution d = mrl::null_pearson(mrl::TuningParam(1.0));
  EXPECT_THROW(d.quantile(0.0), std::domain_error);
  EXPECT_THROW(d.quantile(1.0), std::domain_error);
}

}  // namespace
