#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mrl/alternatives.hpp"
#include "mrl/bahadur.hpp"
#include "mrl/error.hpp"
#include "mrl/inference.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/special.hpp"

namespace {

using mrl::Family;
using mrl::FamilySpec;
using mrl::TuningParam;

TEST(HKernel, SymmetricAndScaleFree) {
  for (double a : {0.0, 0.5, 2.0}) {
    for (double x : {0.1, 0.9, 2.5}) {
      for (double y : {0.3, 1.7}) {
        const double h = mrl::h_kernel(TuningParam(a), x, y, 1.3);
        EXPECT_NEAR(h, mrl::h_kernel(TuningParam(a), y, x, 1.3), 1e-14);
        EXPECT_NEAR(h, mrl::h_kernel(TuningParam(a), 4.0 * x, 4.0 * y, 5.2), 1e-13);
      }
    }
  }
  EXPECT_THROW(mrl::h_kernel(TuningParam(1.0), 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(HKernel, EqualsUpsilonThreeAtZero) {
  for (double x : {0.2, 1.1, 3.0}) {
    for (double y : {0.4, 2.0}) {
      EXPECT_NEAR(mrl::h_kernel(TuningParam(0.0), x, y, 2.0), mrl::upsilon(3, TuningParam(0.0), x / 2.0, y / 2.0),
                  1e-14);
    }
  }
}

// a^3 h = a^3 upsilon_3 - a^2 uv + a(u + v) with u = x/mu - 1, v = y/mu - 1;
// the extra terms vanish in expectation over independent mean-mu draws.
TEST(HKernel, DiffersFromUpsilonThreeByCentredTerms) {
  for (double a : {0.5, 1.0, 3.0}) {
    for (double x : {0.2, 1.1, 3.0}) {
      for (double y : {0.4, 2.0}) {
        const double mu = 1.4;
        const double u = x / mu - 1.0;
        const double v = y / mu - 1.0;
        const double lhs = a * a * a * mrl::h_kernel(TuningParam(a), x, y, mu);
        const double rhs = a * a * a * mrl::upsilon(3, TuningParam(a), x / mu, y / mu) - a * a * u * v + a * (u + v);
        EXPECT_NEAR(lhs, rhs, 1e-12) << a << " " << x << " " << y;
      }
    }
  }
}

TEST(ExpectedH, EqualsDelta) {
  for (const auto& m : {mrl::AlternativeModel::gamma_bb(2.0), mrl::AlternativeModel(Family::Weibull, 0.3)}) {
    for (double a : {0.0, 1.0, 2.0}) {
      EXPECT_NEAR(mrl::expected_h(m, TuningParam(a)), mrl::delta(m, TuningParam(a)), 1e-6) << m.describe();
    }
  }
}

TEST(SlopeB, RoutesAgreeAwayFromNull) {
  const FamilySpec f{Family::LFR};
  for (double a : {0.0, 1.0, 3.0}) {
    EXPECT_NEAR(mrl::b_of_theta(f, TuningParam(a), 0.5, mrl::SlopeRoute::Contrast),
                mrl::b_of_theta(f, TuningParam(a), 0.5, mrl::SlopeRoute::Kernel), 1e-6);
  }
  EXPECT_EQ(mrl::b_of_theta(f, TuningParam(1.0), 0.0), 0.0);
}

TEST(SlopeB, GammaShapeTwoClosedForm) {
  // theta = 1 is Gamma(2, 1); rescaled it is Gamma(2, 2).
  for (double a : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(mrl::b_of_theta(FamilySpec{Family::GammaTheta}, TuningParam(a), 1.0),
                2.0 / std::pow(a + 4.0, 3), 1e-10);
  }
}

TEST(Curvature, RatiosConvergeToExtrapolation) {
  const auto c = mrl::slope_curvature(FamilySpec{Family::Weibull}, TuningParam(1.0));
  EXPECT_LT(std::abs(c.ratio[2] - c.b2), std::abs(c.ratio[0] - c.b2));
  EXPECT_NEAR(c.first_order[0], c.first_order[1], 0.01 * std::abs(c.b2));
  EXPECT_THROW(mrl::slope_curvature(FamilySpec{Family::GammaBetaBeta}, TuningParam(1.0)),
               mrl::UnsupportedFamily);
}

TEST(Kl, NumericMatchesStatedNumbers) {
  for (Family f : {Family::Weibull, Family::GammaTheta, Family::LFR, Family::EMNW, Family::Makeham}) {
    const FamilySpec spec{f};
    EXPECT_NEAR(mrl::kl_numeric(spec), mrl::kl_number(spec), 1e-5 * mrl::kl_number(spec))
        << mrl::to_string(f);
  }
  EXPECT_THROW(mrl::kl_number(FamilySpec{Family::EMNW, 2.0}), mrl::UnsupportedFamily);
  EXPECT_THROW(mrl::kl_numeric(FamilySpec{Family::Exponential}), mrl::UnsupportedFamily);
}

TEST(Kl, WeibullNumberIsPiSquaredOverSix) {
  EXPECT_NEAR(mrl::kl_number(FamilySpec{Family::Weibull}), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
}

TEST(Efficiency, SelectedCells) {
  struct Cell {
    Family family;
    double a;
    double eff;
  };
  for (const Cell& c : {Cell{Family::Weibull, 2.0, 0.865}, Cell{Family::GammaTheta, 0.0, 0.517},
                        Cell{Family::LFR, 3.0, 0.495}, Cell{Family::EMNW, 2.0, 0.987},
                        Cell{Family::Makeham, 1.0, 0.987}}) {
    const auto r = mrl::efficiency(FamilySpec{c.family}, TuningParam(c.a));
    EXPECT_NEAR(r.eff, c.eff, 0.015) << mrl::to_string(c.family) << " a=" << c.a;
    EXPECT_NEAR(r.lambda1, mrl::eigen_spectrum(TuningParam(c.a), 1).lambdas[0], 1e-15);
  }
}

TEST(Efficiency, BoundedAndMonotoneWhereExpected) {
  double lfr_prev = 2.0;
  double gamma_prev = 0.0;
  for (double a : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}) {
    const double lfr = mrl::efficiency(FamilySpec{Family::LFR}, TuningParam(a)).eff;
    const double gam = mrl::efficiency(FamilySpec{Family::GammaTheta}, TuningParam(a)).eff;
    EXPECT_LE(lfr, 1.01);
    EXPECT_LE(gam, 1.01);
    EXPECT_LT(lfr, lfr_prev);
    EXPECT_GT(gam, gamma_prev);
    lfr_prev = lfr;
    gamma_prev = gam;
  }
}

}  // namespace
