#include "mrl/pearson.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "mrl/error.hpp"
#include "mrl/special.hpp"

namespace mrl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const QuadratureSpec kMassSpec{1e-14, 1e-11, 1000};

}  // namespace

std::string_view to_string(PearsonType type) {
  switch (type) {
    case PearsonType::I: return "I";
    case PearsonType::III: return "III";
    case PearsonType::IV: return "IV";
    case PearsonType::V: return "V";
    case PearsonType::VI: return "VI";
  }
  return "?";
}

PearsonDistribution::PearsonDistribution(const PearsonMoments& m) : mean_(m.mean) {
  const double beta1 = m.skewness * m.skewness;
  const double beta2 = m.kurtosis;
  if (!(m.variance > 0.0) || !std::isfinite(m.mean) || !std::isfinite(m.skewness) ||
      !std::isfinite(beta2) || beta2 <= 1.0 + beta1) {
    throw UnsupportedRegion("moments do not describe a distribution");
  }
  const double den = 10.0 * beta2 - 12.0 * beta1 - 18.0;
  if (std::abs(den) < 1e-12) throw UnsupportedRegion("Pearson denominator vanishes");
  sd_ = std::sqrt(m.variance);
  c0_ = m.variance * (4.0 * beta2 - 3.0 * beta1) / den;
  c1_ = sd_ * m.skewness * (beta2 + 3.0) / den;
  c2_ = (2.0 * beta2 - 3.0 * beta1 - 6.0) / den;

  // Everything below is expressed in units of sd for the closeness tests.
  const double rel_c1 = c1_ / sd_;
  const double rel_c0 = c0_ / m.variance;
  if (std::abs(c2_) < 1e-10) {
    if (std::abs(rel_c1) < 1e-10) throw UnsupportedRegion("normal limit of the Pearson system");
    type_ = PearsonType::III;
    root1_ = -c0_ / c1_;
    exp1_ = c0_ / (c1_ * c1_) - 1.0;
    if (c1_ > 0.0) {
      lower_ = root1_;
      upper_ = kInf;
      lower_exponent_ = exp1_;
    } else {
      lower_ = -kInf;
      upper_ = root1_;
      upper_exponent_ = exp1_;
    }
  } else {
    const double disc = rel_c1 * rel_c1 - 4.0 * rel_c0 * c2_;
    if (disc < -1e-12) {
      if (c2_ < 0.0) throw UnsupportedRegion("Pearson quadratic has no real roots and c2 < 0");
      type_ = PearsonType::IV;
      lower_ = -kInf;
      upper_ = kInf;
    } else if (disc <= 1e-12) {
      type_ = PearsonType::V;
      root1_ = -c1_ / (2.0 * c2_);
      if (root1_ < 0.0) {
        lower_ = root1_;
        upper_ = kInf;
      } else {
        lower_ = -kInf;
        upper_ = root1_;
      }
    } else {
      const double sq = std::sqrt(disc) * sd_;
      root1_ = (-c1_ - sq) / (2.0 * c2_);
      root2_ = (-c1_ + sq) / (2.0 * c2_);
      if (root1_ > root2_) std::swap(root1_, root2_);
      // log f = e1 log|y - r1| + e2 log|y - r2| from partial fractions.
      exp1_ = -(c1_ + root1_) / (c2_ * (root1_ - root2_));
      exp2_ = -(c1_ + root2_) / (c2_ * (root2_ - root1_));
      if (root1_ < 0.0 && 0.0 < root2_) {
        type_ = PearsonType::I;
        lower_ = root1_;
        upper_ = root2_;
        lower_exponent_ = exp1_;
        upper_exponent_ = exp2_;
      } else if (root2_ < 0.0) {
        type_ = PearsonType::VI;
        lower_ = root2_;
        upper_ = kInf;
        lower_exponent_ = exp2_;
      } else {
        type_ = PearsonType::VI;
        lower_ = -kInf;
        upper_ = root1_;
        upper_exponent_ = exp1_;
      }
      if (lower_exponent_ <= -1.0 || upper_exponent_ <= -1.0) {
        throw UnsupportedRegion("Pearson density is not integrable at a finite endpoint");
      }
    }
  }

  log_ref_ = log_kernel(0.0);
  left_mass_ = mass(lower_, 0.0);
  right_mass_ = mass(0.0, upper_);
  if (!(left_mass_ + right_mass_ > 0.0) || !std::isfinite(left_mass_ + right_mass_)) {
    throw UnsupportedRegion("Pearson density could not be normalised");
  }
}

double PearsonDistribution::log_kernel(double y) const {
  switch (type_) {
    case PearsonType::III:
      return -y / c1_ + exp1_ * std::log(std::abs(y - root1_));
    case PearsonType::IV: {
      const double q = c0_ + c1_ * y + c2_ * y * y;
      const double w = std::sqrt(4.0 * c0_ * c2_ - c1_ * c1_);
      return -std::log(q) / (2.0 * c2_) -
             (c1_ - c1_ / (2.0 * c2_)) * (2.0 / w) * std::atan((2.0 * c2_ * y + c1_) / w);
    }
    case PearsonType::V: {
      const double d = y - root1_;
      return -std::log(std::abs(d)) / c2_ + (c1_ + root1_) / (c2_ * d);
    }
    case PearsonType::I:
    case PearsonType::VI:
      return exp1_ * std::log(std::abs(y - root1_)) + exp2_ * std::log(std::abs(y - root2_));
  }
  return 0.0;
}

double PearsonDistribution::kernel(double y) const {
  if (y <= lower_ || y >= upper_) return 0.0;
  return std::exp(log_kernel(y) - log_ref_);
}

// Integral of the unnormalised density over [from, to] (centred). A finite
// endpoint with a singular power e < 0 is removed by y = end +- s^(1/(1+e)),
// which makes the integrand bounded; infinite ends use a rational map.
double PearsonDistribution::mass(double from, double to) const {
  if (!(to > from)) return 0.0;
  const bool lower_end = from == lower_ && std::isfinite(from) && lower_exponent_ < 0.0;
  const bool upper_end = to == upper_ && std::isfinite(to) && upper_exponent_ < 0.0;
  if (lower_end && upper_end) {
    const double mid = 0.5 * (from + to);
    return mass(from, mid) + mass(mid, to);
  }

  if (lower_end || upper_end) {
    const double end = lower_end ? from : to;
    const double other = lower_end ? to : from;
    const double e = lower_end ? lower_exponent_ : upper_exponent_;
    const double sign = lower_end ? 1.0 : -1.0;
    const double p = 1.0 / (1.0 + e);
    if (std::isinf(other)) {
      // Split so the substituted part stays finite.
      const double mid = end + sign * sd_;
      return mass(from, mid) + mass(mid, to);
    }
    const double span = std::pow(std::abs(other - end), 1.0 + e);
    auto f = [&](double s) {
      double d = std::pow(s, p);
      double y = end + sign * d;
      if (y == end) {
        // d is below the spacing of doubles at the endpoint: use the nearest
        // representable point, the regular part is continuous there.
        y = std::nextafter(end, sign > 0.0 ? kInf : -kInf);
        d = std::abs(y - end);
      }
      const double r = log_kernel(y) - e * std::log(d) - log_ref_;
      return p * std::exp(r);
    };
    return integrate(f, Interval{0.0, span}, kMassSpec);
  }

  if (std::isinf(from) || std::isinf(to)) {
    if (std::isinf(from) && std::isinf(to)) return mass(from, 0.0) + mass(0.0, to);
    const double anchor = std::isinf(from) ? to : from;
    const double sign = std::isinf(from) ? -1.0 : 1.0;
    auto f = [&](double u) {
      const double t = u / (1.0 - u);
      if (!std::isfinite(t)) return 0.0;
      const double y = anchor + sign * sd_ * t;
      const double k = kernel(y);
      if (k == 0.0) return 0.0;
      return k * sd_ / ((1.0 - u) * (1.0 - u));
    };
    return integrate(f, Interval{0.0, 1.0}, kMassSpec);
  }

  return integrate([this](double y) { return kernel(y); }, Interval{from, to}, kMassSpec);
}

double PearsonDistribution::pdf(double x) const {
  const double y = x - mean_;
  if (y <= lower_ || y >= upper_) return 0.0;
  return kernel(y) / (left_mass_ + right_mass_);
}

double PearsonDistribution::cdf(double x) const {
  const double y = x - mean_;
  if (y <= lower_) return 0.0;
  if (y >= upper_) return 1.0;
  const double total = left_mass_ + right_mass_;
  if (y <= 0.0) return mass(lower_, y) / total;
  return 1.0 - mass(y, upper_) / total;
}

double PearsonDistribution::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile level must lie in (0, 1)");
  double lo = std::isfinite(lower_) ? mean_ + lower_ : mean_ - sd_;
  double hi = std::isfinite(upper_) ? mean_ + upper_ : mean_ + sd_;
  if (!std::isfinite(lower_)) {
    while (cdf(lo) > q) lo -= (hi - lo);
  }
  if (!std::isfinite(upper_)) {
    while (cdf(hi) < q) hi += (hi - lo);
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mrl
