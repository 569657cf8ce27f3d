#include "mrl/alternatives.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "mrl/error.hpp"
#include "mrl/special.hpp"

namespace mrl {

namespace {

const QuadratureSpec kTailSpec{1e-15, 1e-13, 500};

double gamma_q(double s, double x) { return boost::math::gamma_q(s, x); }

// Truncated moments of Exp(rate): \int_x^inf t^k rate e^{-rate t} dt.
double exp_partial(int k, double x, double rate) {
  const double e = std::exp(-rate * x);
  switch (k) {
    case 0: return e;
    case 1: return (x + 1.0 / rate) * e;
    default: return (x * x + 2.0 * x / rate + 2.0 / (rate * rate)) * e;
  }
}

// Root of a strictly monotone f on [lo, hi] with f(lo), f(hi) of opposite
// sign; Newton steps that leave the bracket fall back to bisection.
template <typename F, typename DF>
double safeguarded_newton(F f, DF df, double lo, double hi) {
  double flo = f(lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Exponential: return "exp";
    case Family::GammaBetaBeta: return "gamma_bb";
    case Family::Weibull: return "weibull";
    case Family::GammaTheta: return "gamma";
    case Family::LFR: return "lfr";
    case Family::EMNW: return "emnw";
    case Family::Makeham: return "makeham";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "exp" || name == "exponential") return Family::Exponential;
  if (name == "gamma_bb") return Family::GammaBetaBeta;
  if (name == "weibull") return Family::Weibull;
  if (name == "gamma" || name == "gamma_theta") return Family::GammaTheta;
  if (name == "lfr") return Family::LFR;
  if (name == "emnw") return Family::EMNW;
  if (name == "makeham") return Family::Makeham;
  throw UnsupportedFamily("unknown family '" + std::string(name) + "'");
}

AlternativeModel::AlternativeModel(Family family, double theta, double beta)
    : family_(family), theta_(theta), beta_(beta) {
  if (!std::isfinite(theta) || !std::isfinite(beta)) {
    throw std::invalid_argument("family parameters must be finite");
  }
  switch (family) {
    case Family::Exponential:
      theta_ = 0.0;
      break;
    case Family::GammaBetaBeta:
      if (beta <= 0.0) throw std::invalid_argument("gamma_bb needs beta > 0");
      theta_ = 0.0;
      break;
    case Family::Weibull:
    case Family::GammaTheta:
    case Family::Makeham:
      if (theta <= -1.0) throw std::invalid_argument("theta must exceed -1");
      break;
    case Family::LFR:
      if (theta < 0.0) throw std::invalid_argument("lfr needs theta >= 0");
      break;
    case Family::EMNW: {
      if (beta <= 0.0 || beta == 1.0) throw std::invalid_argument("emnw needs beta > 0, beta != 1");
      // g(x) e^x = (1+theta) - theta beta e^{-(beta-1)x} is monotone in x, so
      // nonnegativity reduces to x = 0 and x -> inf.
      const bool at_zero = 1.0 + theta - theta * beta >= 0.0;
      const bool at_inf = beta > 1.0 ? 1.0 + theta >= 0.0 : theta <= 0.0;
      if (!at_zero || !at_inf) {
        throw std::invalid_argument("emnw density is negative for this theta");
      }
      break;
    }
  }
  if (family_ != Family::GammaBetaBeta && family_ != Family::EMNW) beta_ = 0.0;
  mean_ = integrate([this](double x) { return survival(x); }, HalfLine{0.0, tail_rate()},
                    kTailSpec);
}

std::string AlternativeModel::describe() const {
  std::ostringstream out;
  out << to_string(family_);
  switch (family_) {
    case Family::Exponential: break;
    case Family::GammaBetaBeta: out << "(beta=" << beta_ << ")"; break;
    case Family::EMNW: out << "(theta=" << theta_ << ",beta=" << beta_ << ")"; break;
    default: out << "(theta=" << theta_ << ")"; break;
  }
  return out.str();
}

double AlternativeModel::tail_rate() const {
  switch (family_) {
    case Family::GammaBetaBeta: return beta_;
    case Family::EMNW: return std::min(1.0, beta_);
    case Family::Makeham: return 1.0 + std::max(theta_, 0.0);
    default: return 1.0;
  }
}

double AlternativeModel::density(double x) const {
  if (x < 0.0) return 0.0;
  const double t = theta_;
  switch (family_) {
    case Family::Exponential:
      return std::exp(-x);
    case Family::GammaBetaBeta: {
      const double b = beta_;
      if (x == 0.0) return b < 1.0 ? INFINITY : (b == 1.0 ? 1.0 : 0.0);
      return std::exp(b * std::log(b) + (b - 1.0) * std::log(x) - b * x - std::lgamma(b));
    }
    case Family::Weibull: {
      if (x == 0.0) return t < 0.0 ? INFINITY : (t == 0.0 ? 1.0 : 0.0);
      const double c = 1.0 + t;
      return c * std::pow(x, t) * std::exp(-std::pow(x, c));
    }
    case Family::GammaTheta:
      if (x == 0.0) return t < 0.0 ? INFINITY : (t == 0.0 ? 1.0 : 0.0);
      return std::exp(t * std::log(x) - x - std::lgamma(t + 1.0));
    case Family::LFR:
      return (1.0 + t * x) * std::exp(-x - 0.5 * t * x * x);
    case Family::EMNW:
      return (1.0 + t) * std::exp(-x) - t * beta_ * std::exp(-beta_ * x);
    case Family::Makeham:
      return (1.0 - t * std::expm1(-x)) * std::exp(-x - t * (x + std::expm1(-x)));
  }
  return 0.0;
}

double AlternativeModel::survival(double x) const {
  if (x <= 0.0) return 1.0;
  const double t = theta_;
  switch (family_) {
    case Family::Exponential: return std::exp(-x);
    case Family::GammaBetaBeta: return gamma_q(beta_, beta_ * x);
    case Family::Weibull: return std::exp(-std::pow(x, 1.0 + t));
    case Family::GammaTheta: return gamma_q(t + 1.0, x);
    case Family::LFR: return std::exp(-x - 0.5 * t * x * x);
    case Family::EMNW: return (1.0 + t) * std::exp(-x) - t * std::exp(-beta_ * x);
    case Family::Makeham: return std::exp(-x - t * (x + std::expm1(-x)));
  }
  return 0.0;
}

double AlternativeModel::partial_moment(int k, double x) const {
  if (k < 0 || k > 2) throw std::invalid_argument("partial moments of order 0..2 only");
  x = std::max(x, 0.0);
  if (k == 0) return survival(x);
  const double t = theta_;
  switch (family_) {
    case Family::Exponential:
      return exp_partial(k, x, 1.0);
    case Family::GammaBetaBeta: {
      const double b = beta_;
      return k == 1 ? gamma_q(b + 1.0, b * x) : (b + 1.0) / b * gamma_q(b + 2.0, b * x);
    }
    case Family::Weibull: {
      const double s = 1.0 + k / (1.0 + t);
      return std::tgamma(s) * gamma_q(s, std::pow(x, 1.0 + t));
    }
    case Family::GammaTheta: {
      const double s = t + 1.0;
      return k == 1 ? s * gamma_q(s + 1.0, x) : s * (s + 1.0) * gamma_q(s + 2.0, x);
    }
    case Family::EMNW:
      return (1.0 + t) * exp_partial(k, x, 1.0) - t * exp_partial(k, x, beta_);
    case Family::LFR:
    case Family::Makeham: {
      const double tail = integrate(
          [this, k](double u) { return (k == 1 ? 1.0 : u) * survival(u); },
          HalfLine{x, tail_rate()}, kTailSpec);
      return std::pow(x, k) * survival(x) + k * tail;
    }
  }
  return 0.0;
}

double AlternativeModel::draw(CounterRng& rng) const {
  const double t = theta_;
  switch (family_) {
    case Family::Exponential:
      return -std::log(rng.uniform());
    case Family::GammaBetaBeta:
      return std::gamma_distribution<double>(beta_, 1.0 / beta_)(rng);
    case Family::Weibull:
      return std::pow(-std::log(rng.uniform()), 1.0 / (1.0 + t));
    case Family::GammaTheta:
      return std::gamma_distribution<double>(t + 1.0, 1.0)(rng);
    case Family::LFR: {
      // Cumulative hazard x + theta x^2 / 2 = E, solved in cancellation-free form.
      const double e = -std::log(rng.uniform());
      return 2.0 * e / (1.0 + std::sqrt(1.0 + 2.0 * t * e));
    }
    case Family::Makeham: {
      const double e = -std::log(rng.uniform());
      if (t == 0.0) return e;
      // H(x) = x + theta (x - 1 + e^{-x}) lies between x and (1 + theta) x.
      const double lo = t > 0.0 ? e / (1.0 + t) : e;
      const double hi = t > 0.0 ? e : e / (1.0 + t);
      return safeguarded_newton([&](double x) { return x + t * (x + std::expm1(-x)) - e; },
                                [&](double x) { return 1.0 - t * std::expm1(-x); }, lo, hi);
    }
    case Family::EMNW: {
      const double u = rng.uniform();
      double hi = 1.0;
      while (survival(hi) > u) hi *= 2.0;
      return safeguarded_newton([&](double x) { return survival(x) - u; },
                                [&](double x) { return -density(x); }, 0.0, hi);
    }
  }
  return 0.0;
}

Sample sample(const AlternativeModel& model, std::size_t n, std::uint64_t seed,
              std::uint32_t cell) {
  CounterRng rng(seed, cell, 0);
  std::vector<double> x(n);
  for (double& v : x) v = model.draw(rng);
  return Sample(std::move(x));
}

namespace {

// S, Psi_1, Psi_2 and z of the scaled variable Y = X / mu at y.
struct Tail {
  double s;
  double psi1;
  double psi2;
  double z;
};

Tail tail_at(const AlternativeModel& m, double y) {
  const double mu = m.mean();
  const double x = mu * y;
  const double s = m.survival(x);
  const double m1 = m.partial_moment(1, x) / mu;
  const double m2 = m.partial_moment(2, x) / (mu * mu);
  const double psi1 = m1 - s;
  return {s, psi1, m2 - 2.0 * m1 + s, psi1 - y * s};
}

double scaled_variance(const AlternativeModel& m) {
  return m.partial_moment(2, 0.0) / (m.mean() * m.mean()) - 1.0;
}

HalfLine weight_line(double lo, double a) { return HalfLine{lo, std::max(a, 1.0)}; }

}  // namespace

double contrast_z(const AlternativeModel& model, double y) {
  if (y < 0.0) throw std::invalid_argument("contrast function needs y >= 0");
  return tail_at(model, y).z;
}

double psi(const AlternativeModel& model, int l, double s) {
  const Tail tl = tail_at(model, s);
  if (l == 1) return tl.psi1;
  if (l == 2) return tl.psi2;
  throw std::invalid_argument("psi is defined for l = 1, 2");
}

double delta(const AlternativeModel& model, TuningParam a) {
  const double rate = a.value();
  return integrate(
      [&](double y) {
        const double z = tail_at(model, y).z;
        return z * z * std::exp(-rate * y);
      },
      weight_line(0.0, rate), QuadratureSpec{1e-15, 1e-12, 500});
}

double delta_closed_gamma(int beta, TuningParam tuning) {
  const double a = tuning.value();
  switch (beta) {
    case 2:
      return 2.0 / std::pow(a + 4.0, 3);
    case 3:
      return 2.0 * (a * a + 30.0 * a + 252.0) / std::pow(a + 6.0, 5);
    case 4:
      return 2.0 * ((((a + 56.0) * a + 1344.0) * a + 16640.0) * a + 94720.0) /
             std::pow(a + 8.0, 7);
    default:
      throw std::invalid_argument("closed form of Delta only for beta in {2, 3, 4}");
  }
}

namespace {

// K(s, t) for s <= t given the tail quantities at both points.
double kernel_ordered(double s, double t, const Tail& ts, const Tail& tt, double var) {
  return tt.psi2 + s * t * tt.s - (s + t) * tt.psi1 - ts.s * (tt.psi2 - t * tt.psi1) -
         tt.s * (ts.psi2 - s * ts.psi1) + var * ts.s * tt.s - ts.z * tt.z;
}

}  // namespace

double alt_kernel(const AlternativeModel& model, double s, double t) {
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("kernel arguments must be >= 0");
  if (s > t) std::swap(s, t);
  return kernel_ordered(s, t, tail_at(model, s), tail_at(model, t), scaled_variance(model));
}

double sigma2(const AlternativeModel& model, TuningParam a) {
  const double rate = a.value();
  const double var = scaled_variance(model);
  const QuadratureSpec inner_spec{1e-16, 1e-11, 400};
  const QuadratureSpec outer_spec{1e-14, 1e-9, 400};
  // Symmetry: integrate over s < t and double.
  const double half = integrate(
      [&](double s) {
        const Tail ts = tail_at(model, s);
        if (ts.z == 0.0) return 0.0;
        const double inner = integrate(
            [&](double t) {
              const Tail tt = tail_at(model, t);
              return kernel_ordered(s, t, ts, tt, var) * tt.z * std::exp(-rate * t);
            },
            weight_line(s, rate), inner_spec);
        return ts.z * std::exp(-rate * s) * inner;
      },
      weight_line(0.0, rate), outer_spec);
  return std::max(0.0, 8.0 * half);
}

namespace {

// 4 Var(C(Y) - (Y-1) k) with C(x) = \int_0^x (x-1-t) z(t) e^{-at} dt.
double linear_term_variance(const AlternativeModel& model, TuningParam a, double k) {
  const double rate = a.value();
  const double mu = model.mean();
  const double var = scaled_variance(model);
  const QuadratureSpec spec{1e-14, 1e-11, 400};
  const QuadratureSpec outer{1e-13, 1e-10, 400};
  auto weighted_z = [&](double t) { return tail_at(model, t).z * std::exp(-rate * t); };
  auto c_of = [&](double x) {
    if (x <= 0.0) return 0.0;
    return integrate([&](double t) { return (x - 1.0 - t) * weighted_z(t); }, Interval{0.0, x},
                     spec);
  };
  const HalfLine line{0.0, model.tail_rate() * mu};
  const double ec2 = integrate(
      [&](double x) {
        const double c = c_of(x);
        return mu * model.density(mu * x) * c * c;
      },
      line, outer);
  const double ecx = integrate(
      [&](double x) { return mu * model.density(mu * x) * (x - 1.0) * c_of(x); }, line, outer);
  const double d = delta(model, a);
  return 4.0 * (ec2 - d * d - 2.0 * k * ecx + k * k * var);
}

}  // namespace

double sigma2_influence(const AlternativeModel& model, TuningParam a) {
  const double rate = a.value();
  const double k = integrate(
      [&](double t) {
        const Tail tl = tail_at(model, t);
        return tl.s * tl.z * std::exp(-rate * t);
      },
      weight_line(0.0, rate), QuadratureSpec{1e-14, 1e-11, 400});
  return linear_term_variance(model, a, k);
}

double sigma2_delta_method(const AlternativeModel& model, TuningParam a) {
  const double rate = a.value();
  const double mu = model.mean();
  // d/dmu of z_n(t) at the true mean: t f(t) - E[Y 1{Y > t}] = t f(t) - z - (t+1) S.
  const double k = integrate(
      [&](double t) {
        const Tail tl = tail_at(model, t);
        const double f = mu * model.density(mu * t);
        return tl.z * (tl.z + (t + 1.0) * tl.s - t * f) * std::exp(-rate * t);
      },
      weight_line(0.0, rate), QuadratureSpec{1e-14, 1e-11, 400});
  return linear_term_variance(model, a, k);
}

}  // namespace mrl
