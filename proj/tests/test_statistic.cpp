#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mrl/alternatives.hpp"
#include "mrl/error.hpp"
#include "mrl/rng.hpp"
#include "mrl/special.hpp"
#include "mrl/statistic.hpp"

namespace {

using mrl::Sample;
using mrl::TuningParam;

std::vector<double> scaled(const std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> y(x);
  for (double& v : y) v /= mean;
  return y;
}

// Pairwise closed form for a > 0, term by term as in the explicit double sum.
double explicit_form(const std::vector<double>& x, double a) {
  const std::vector<double> y = scaled(x);
  double s = 0.0;
  for (double yj : y) {
    for (double yk : y) {
      const double m = std::min(yj, yk);
      const double e = std::exp(-a * m);
      s += (std::abs(yj - yk) - 1.0) * e / a + (yj + yk - 2.0 * (m + 1.0)) * e / (a * a) -
           2.0 * (e - 1.0) / (a * a * a);
    }
  }
  return s / static_cast<double>(y.size());
}

// The vectorised reference form with centring terms, a > 0 only. Its usual
// a = 0 branch multiplies min(Y_j, Y_k) by (Y_j - 1) alone, which drops the
// (Y_k - 1) factor; the a = 0 case is checked against cubic_form instead.
double matrix_form(const std::vector<double>& x, double a) {
  const std::vector<double> y = scaled(x);
  double s = 0.0;
  for (double yj : y) {
    for (double yk : y) {
      const double m = std::min(yj, yk);
      const double p = yj + yk;
      const double e = std::exp(-a * m);
      s += (-(yj - m - 1.0) * (yk - m - 1.0) * e + (yj - 1.0)) / a +
           ((p - 2.0 * m - 2.0) * e - (p - 2.0)) / (a * a) + 2.0 * (1.0 - e) / (a * a * a);
    }
  }
  return s / static_cast<double>(y.size());
}

// The cubic a = 0 form.
double cubic_form(const std::vector<double>& x) {
  const std::vector<double> y = scaled(x);
  double s = 0.0;
  for (double yj : y) {
    for (double yk : y) {
      const double m = std::min(yj, yk);
      s += m * m * m / 3.0 - (yj + yk - 2.0) / 2.0 * m * m + (yj - 1.0) * (yk - 1.0) * m;
    }
  }
  return s / static_cast<double>(y.size());
}

// n \int_0^{max Y} |mean_j (Y_j - y - 1) 1{Y_j > y}|^2 e^{-a y} dy, split at the data.
double definition_by_quadrature(const std::vector<double>& x, double a) {
  std::vector<double> y = scaled(x);
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  auto integrand = [&](double t) {
    double z = 0.0;
    for (double v : y) {
      if (v > t) z += v - t - 1.0;
    }
    z /= n;
    return z * z * std::exp(-a * t);
  };
  double total = 0.0;
  double lo = 0.0;
  for (double v : y) {
    if (v > lo) total += mrl::integrate(integrand, mrl::Interval{lo, v}, {1e-15, 1e-13, 400});
    lo = v;
  }
  return n * total;
}

std::vector<double> draw(const mrl::AlternativeModel& m, std::size_t n, std::uint32_t cell) {
  mrl::CounterRng rng(31, cell, 0);
  std::vector<double> x(n);
  for (double& v : x) v = m.draw(rng);
  return x;
}

TEST(Sample, ValidatesInput) {
  EXPECT_THROW(Sample({}), mrl::DataError);
  EXPECT_THROW(Sample({1.0, 0.0}), mrl::DataError);
  EXPECT_THROW(Sample({1.0, -2.0}), mrl::DataError);
  EXPECT_THROW(Sample({1.0, std::nan("")}), mrl::DataError);
  EXPECT_THROW(Sample({1.0, INFINITY}), mrl::DataError);
  EXPECT_DOUBLE_EQ(Sample({1.0, 2.0, 6.0}).mean(), 3.0);
}

TEST(TuningParam, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(TuningParam(-0.5), std::invalid_argument);
  EXPECT_THROW(TuningParam(std::nan("")), std::invalid_argument);
  EXPECT_EQ(TuningParam(0.0).value(), 0.0);
}

TEST(Scale, Examples) {
  auto y = mrl::scale(Sample({2.0, 4.0}));
  EXPECT_DOUBLE_EQ(y.values()[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(y.values()[1], 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(mrl::scale(Sample({7.5})).values()[0], 1.0);
  auto z = mrl::scale(Sample({1.0, 2.0, 3.0}));
  EXPECT_DOUBLE_EQ(z.values()[0], 0.5);
  EXPECT_DOUBLE_EQ(z.values()[1], 1.0);
  EXPECT_DOUBLE_EQ(z.values()[2], 1.5);
}

TEST(Scale, MeanIsOne) {
  const auto x = draw(mrl::AlternativeModel(mrl::Family::Weibull, 0.5), 997, 1);
  const auto y = mrl::scale(Sample(x));
  const double mean = std::accumulate(y.values().begin(), y.values().end(), 0.0) / 997.0;
  EXPECT_NEAR(mean, 1.0, 1e-12);
}

TEST(TruncatedMoments, MatchQuadrature) {
  for (double a : {0.0, 1e-9, 1e-4, 0.3, 1.0, 4.0, 30.0}) {
    for (double m : {0.0, 1e-6, 0.01, 0.5, 1.0, 3.0, 12.0}) {
      const mrl::TruncatedMoments t = mrl::truncated_moments(a, m);
      for (int k = 0; k <= 2; ++k) {
        const double ref =
            m == 0.0 ? 0.0
                     : mrl::integrate([&](double s) { return std::pow(s, k) * std::exp(-a * s); },
                                      mrl::Interval{0.0, m}, {1e-300, 1e-13, 400});
        const double got = k == 0 ? t.i0 : k == 1 ? t.i1 : t.i2;
        EXPECT_NEAR(got, ref, 1e-11 * std::max(ref, 1e-300)) << a << " " << m << " " << k;
      }
    }
  }
}

TEST(Statistic, SingleObservation) {
  for (double c : {0.01, 1.0, 250.0}) {
    EXPECT_NEAR(mrl::statistic(Sample({c}), TuningParam(0.0)), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(mrl::statistic(Sample({c}), TuningParam(1.0)), 2.0 - 5.0 / std::exp(1.0), 1e-14);
    for (double a : {0.3, 2.0, 7.0}) {
      const double exact = (2.0 - std::exp(-a) * (a * a + 2.0 * a + 2.0)) / (a * a * a);
      EXPECT_NEAR(mrl::statistic(Sample({c}), TuningParam(a)), exact, 1e-13);
    }
    EXPECT_NEAR(mrl::statistic_g_oracle(Sample({c}), TuningParam(0.0)), 1.0 / 3.0, 1e-12);
  }
}

TEST(Statistic, MatchesDefinitionByQuadrature) {
  for (std::uint32_t s = 0; s < 10; ++s) {
    const auto x = draw(mrl::AlternativeModel::gamma_bb(1.5), 5, s);
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
      EXPECT_NEAR(mrl::statistic(Sample(x), TuningParam(a)), definition_by_quadrature(x, a), 1e-8);
    }
  }
}

TEST(Statistic, MatchesExplicitAndMatrixForms) {
  for (std::uint32_t s = 0; s < 10; ++s) {
    const auto x = draw(mrl::AlternativeModel::exponential(), 30, 100 + s);
    const double t0 = mrl::statistic(Sample(x), TuningParam(0.0));
    EXPECT_NEAR(t0, cubic_form(x), 1e-12);
    EXPECT_NEAR(t0, matrix_form(x, 1e-4), 1e-3);
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
      const double t = mrl::statistic(Sample(x), TuningParam(a));
      EXPECT_NEAR(t, explicit_form(x, a), 1e-10) << a;
      EXPECT_NEAR(t, matrix_form(x, a), 1e-10) << a;
    }
  }
}

TEST(Statistic, SortedPairwiseAndOracleAgree) {
  for (std::uint32_t s = 0; s < 20; ++s) {
    const std::size_t n = 2 + 3 * s;
    const auto x = draw(mrl::AlternativeModel(mrl::Family::LFR, 1.0), n, 200 + s);
    for (double a : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      const double t = mrl::statistic(Sample(x), TuningParam(a));
      EXPECT_NEAR(t, mrl::statistic_pairwise(Sample(x), TuningParam(a)), 1e-11);
      EXPECT_NEAR(t, mrl::statistic_g_oracle(Sample(x), TuningParam(a)), 1e-7);
    }
  }
}

TEST(Statistic, ThreeValueExample) {
  const Sample x({0.5, 1.0, 1.5});
  EXPECT_NEAR(mrl::statistic(x, TuningParam(1.0)), mrl::statistic_g_oracle(x, TuningParam(1.0)), 1e-8);
  EXPECT_NEAR(mrl::statistic(x, TuningParam(1.0)), definition_by_quadrature({0.5, 1.0, 1.5}, 1.0), 1e-10);
}

TEST(Statistic, HandlesTies) {
  const std::vector<double> x = {1.0, 1.0, 2.0, 2.0, 2.0, 0.5};
  for (double a : {0.0, 1.0}) {
    EXPECT_NEAR(mrl::statistic(Sample(x), TuningParam(a)), definition_by_quadrature(x, a), 1e-10);
  }
}

TEST(Statistic, NonNegative) {
  for (std::uint32_t s = 0; s < 50; ++s) {
    const auto x = draw(mrl::AlternativeModel::exponential(), 2 + s, 300 + s);
    for (double a : {0.0, 1e-3, 1.0, 10.0}) EXPECT_GE(mrl::statistic(Sample(x), TuningParam(a)), 0.0);
  }
}

TEST(StatisticProperty, ScaleInvariance) {
  for (std::uint32_t s = 0; s < 100; ++s) {
    const auto x = draw(mrl::AlternativeModel::gamma_bb(2.0), 5 + s % 40, 400 + s);
    for (double a : {0.0, 1.0, 3.0}) {
      const double base = mrl::statistic(Sample(x), TuningParam(a));
      for (double c : {1e-3, 1.0, 1e3}) {
        std::vector<double> cx(x);
        for (double& v : cx) v *= c;
        EXPECT_NEAR(mrl::statistic(Sample(cx), TuningParam(a)), base, 1e-9 * base);
      }
    }
  }
}

TEST(StatisticProperty, PermutationInvariance) {
  auto x = draw(mrl::AlternativeModel(mrl::Family::Makeham, 1.0), 60, 500);
  const double base = mrl::statistic(Sample(x), TuningParam(1.5));
  mrl::CounterRng rng(3, 0, 0);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(x.begin(), x.end(), rng);
    EXPECT_NEAR(mrl::statistic(Sample(x), TuningParam(1.5)), base, 1e-14);
  }
}

TEST(StatisticProperty, ContinuousAtZero) {
  for (std::uint32_t s = 0; s < 20; ++s) {
    const auto x = draw(mrl::AlternativeModel::exponential(), 25, 600 + s);
    const double t0 = mrl::statistic(Sample(x), TuningParam(0.0));
    EXPECT_LE(std::abs(mrl::statistic(Sample(x), TuningParam(1e-4)) - t0), 1e-3);
    EXPECT_LE(std::abs(mrl::statistic(Sample(x), TuningParam(1e-9)) - t0), 1e-8);
  }
}

TEST(StatisticProperty, VanishesUnderNullAtLargeN) {
  const auto x = draw(mrl::AlternativeModel::exponential(), 10000, 700);
  for (double a : {0.0, 1.0, 2.0}) {
    EXPECT_LE(mrl::statistic(Sample(x), TuningParam(a)) / 10000.0, 0.01);
  }
}

}  // namespace
