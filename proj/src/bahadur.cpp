#include "mrl/bahadur.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mrl/error.hpp"
#include "mrl/null_dist.hpp"
#include "mrl/special.hpp"

namespace mrl {

double h_kernel(TuningParam tuning, double x, double y, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  const double a = tuning.value();
  const double m = std::min(x, y) / mu;
  if (a == 0.0) {
    const double sx = x / mu;
    const double sy = y / mu;
    return m * (sx - 1.0) * (sy - 1.0) + m * m * (1.0 - (sx + sy) / 2.0) + m * m * m / 3.0;
  }
  const double d = std::abs(x - y) / mu;
  return (2.0 - ((1.0 - d) * (a * a + a) + a + 2.0) * std::exp(-a * m)) / (a * a * a);
}

double expected_h(const AlternativeModel& model, TuningParam a) {
  const double mu = model.mean();
  const double rate = model.tail_rate();
  const QuadratureSpec inner{1e-13, 1e-11, 400};
  const QuadratureSpec outer{1e-12, 1e-10, 400};
  // Symmetric integrand: twice the integral over x < y.
  const double half = integrate(
      [&](double x) {
        const double gx = model.density(x);
        if (gx == 0.0) return 0.0;
        return gx * integrate([&](double y) { return model.density(y) * h_kernel(a, x, y, mu); },
                              HalfLine{x, rate}, inner);
      },
      HalfLine{0.0, rate}, outer);
  return 2.0 * half;
}

double b_of_theta(const FamilySpec& family, TuningParam a, double theta, SlopeRoute route) {
  if (theta == 0.0) return 0.0;
  const AlternativeModel model = family.at(theta);
  return route == SlopeRoute::Contrast ? delta(model, a) : expected_h(model, a);
}

Curvature slope_curvature(const FamilySpec& family, TuningParam a) {
  if (family.family == Family::Exponential || family.family == Family::GammaBetaBeta) {
    throw UnsupportedFamily("slope curvature needs a one-parameter family through Exp(1)");
  }
  constexpr std::array<double, 3> steps{0.02, 0.01, 0.005};
  Curvature c{};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    c.ratio[i] = 2.0 * b_of_theta(family, a, steps[i]) / (steps[i] * steps[i]);
  }
  c.first_order = {2.0 * c.ratio[1] - c.ratio[0], 2.0 * c.ratio[2] - c.ratio[1]};
  if (std::abs(c.first_order[1] - c.first_order[0]) > 0.01 * std::abs(c.first_order[1])) {
    throw InconsistentExtrapolation("finite-difference estimates of b''(0) disagree by more than 1%");
  }
  c.b2 = (4.0 * c.first_order[1] - c.first_order[0]) / 3.0;
  return c;
}

double kl_number(const FamilySpec& family) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  constexpr double gamma = std::numbers::egamma;
  switch (family.family) {
    case Family::Weibull:
      return 1.0 - 2.0 * gamma + pi2_6 + gamma * gamma - (1.0 - gamma) * (1.0 - gamma);
    case Family::GammaTheta:
      return pi2_6 - 1.0;
    case Family::LFR:
      return 1.0;
    case Family::EMNW:
      if (family.beta != 3.0) throw UnsupportedFamily("KL number is tabulated for EMNW(3) only");
      return 16.0 / 45.0;
    case Family::Makeham:
      return 1.0 / 12.0;
    default:
      throw UnsupportedFamily("no KL number for " + std::string(to_string(family.family)));
  }
}

double kl_numeric(const FamilySpec& family, double h) {
  if (family.family == Family::Exponential || family.family == Family::GammaBetaBeta) {
    throw UnsupportedFamily("KL number needs a one-parameter family through Exp(1)");
  }
  const bool one_sided = family.family == Family::LFR;
  const AlternativeModel m0 = family.at(0.0);
  const AlternativeModel m1 = family.at(one_sided ? h : -h);
  const AlternativeModel m2 = family.at(one_sided ? 2.0 * h : h);
  // First derivative in theta at 0.
  auto diff = [&](double f0, double f1, double f2) {
    return one_sided ? (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h) : (f2 - f1) / (2.0 * h);
  };
  const double fisher = integrate(
      [&](double x) {
        const double g0 = m0.density(x);
        if (g0 == 0.0) return 0.0;
        const double d = diff(g0, m1.density(x), m2.density(x));
        return d * d / g0;
      },
      HalfLine{0.0, 1.0}, QuadratureSpec{1e-13, 1e-10, 500});
  const double mu1 = diff(m0.mean(), m1.mean(), m2.mean());
  return fisher - mu1 * mu1;
}

SlopeResult efficiency(const FamilySpec& family, TuningParam a) {
  const Curvature c = slope_curvature(family, a);
  const double kl = kl_number(family);
  const double lambda1 = eigen_spectrum(a, 1).lambdas.front();
  return {a.value(), family.family, c.b2, kl, lambda1, c.b2 / (2.0 * lambda1 * kl)};
}

}  // namespace mrl
