#ifndef MRL_ALTERNATIVES_HPP_
#define MRL_ALTERNATIVES_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "mrl/rng.hpp"
#include "mrl/statistic.hpp"

namespace mrl {

enum class Family { Exponential, GammaBetaBeta, Weibull, GammaTheta, LFR, EMNW, Makeham };

std::string_view to_string(Family family);
// Accepts the CLI spellings: exp, gamma_bb, weibull, gamma, lfr, emnw, makeham.
Family parse_family(std::string_view name);

// A lifetime distribution from one of the alternative families.
//
//   Exponential     e^{-x}
//   GammaBetaBeta   Gamma(beta, beta): shape beta, rate beta, mean 1
//   Weibull         (1+theta) x^theta exp(-x^{1+theta})
//   GammaTheta      x^theta e^{-x} / Gamma(theta+1)
//   LFR             (1+theta x) exp(-x - theta x^2/2)
//   EMNW            (1+theta) e^{-x} - theta beta e^{-beta x}
//   Makeham         (1 + theta(1-e^{-x})) exp(-x - theta(x - 1 + e^{-x}))
//
// theta = 0 gives Exp(1) in every theta family. Construction validates the
// parameter range (EMNW: the density must stay nonnegative) and computes the
// mean by quadrature of the survival function.
class AlternativeModel {
 public:
  // `theta` is the family parameter; `beta` is the shape of GammaBetaBeta or
  // the second rate of EMNW and is ignored otherwise.
  AlternativeModel(Family family, double theta, double beta = 3.0);

  static AlternativeModel exponential() { return {Family::Exponential, 0.0}; }
  static AlternativeModel gamma_bb(double beta) { return {Family::GammaBetaBeta, 0.0, beta}; }

  Family family() const { return family_; }
  double theta() const { return theta_; }
  double beta() const { return beta_; }
  double mean() const { return mean_; }
  std::string describe() const;

  double density(double x) const;
  double survival(double x) const;
  double cdf(double x) const { return 1.0 - survival(x); }

  // E[X^k 1{X > x}] for k = 0, 1, 2 (closed forms where available,
  // otherwise x^k S(x) + k \int_x^inf t^{k-1} S(t) dt by quadrature).
  double partial_moment(int k, double x) const;

  // Exponential rate governing the right tail, used for half-line mappings.
  double tail_rate() const;

  double draw(CounterRng& rng) const;

 private:
  Family family_;
  double theta_;
  double beta_;
  double mean_ = 1.0;
};

// n iid draws from stream (seed, cell, 0..): deterministic given the seed.
Sample sample(const AlternativeModel& model, std::size_t n, std::uint64_t seed,
              std::uint32_t cell = 0);

// The remaining functions act on the mean-one rescaling Y = X / mu.

// z(y) = E[(Y - y - 1) 1{Y > y}] = Psi_1(y) - y S(y).
double contrast_z(const AlternativeModel& model, double y);

// Psi_l(s) = E[(Y-1)^l 1{Y > s}], l = 1, 2.
double psi(const AlternativeModel& model, int l, double s);

// Delta_a = \int_0^inf z(y)^2 e^{-a y} dy by quadrature.
double delta(const AlternativeModel& model, TuningParam a);

// Rational closed forms for Gamma(beta, beta), beta in {2, 3, 4}.
double delta_closed_gamma(int beta, TuningParam a);

// Covariance kernel of the limit process under the model.
double alt_kernel(const AlternativeModel& model, double s, double t);

// sigma_a^2 = 4 \iint K(x,y) z(x) z(y) e^{-a(x+y)} dx dy by nested quadrature.
double sigma2(const AlternativeModel& model, TuningParam a);

// Same quantity as 4 Var(C(Y) - (Y-1) E[A(Y)]) with A(x) = \int_0^x z e^{-at},
// C(x) = \int_0^x (x-1-t) z(t) e^{-at} dt. Independent of the kernel formula.
double sigma2_influence(const AlternativeModel& model, TuningParam a);

// Asymptotic variance of sqrt(n) T/n by the delta method, with E[A(Y)]
// replaced by \int z (z + (t+1) S - t f) e^{-at}: rescaling by the sample
// mean also moves the indicator boundaries, which adds the density term.
// Agrees with sigma2 as the model approaches Exp(1) but not away from it
// (smaller for Gamma(beta, beta)); simulated n Var(T/n) follows this one.
double sigma2_delta_method(const AlternativeModel& model, TuningParam a);

}  // namespace mrl

#endif  // MRL_ALTERNATIVES_HPP_
