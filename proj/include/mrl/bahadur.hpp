#ifndef MRL_BAHADUR_HPP_
#define MRL_BAHADUR_HPP_

#include <array>

#include "mrl/alternatives.hpp"
#include "mrl/statistic.hpp"

namespace mrl {

// A one-parameter family g(x; theta) with theta = 0 the standard exponential.
struct FamilySpec {
  Family family;
  double beta = 3.0;  // second rate of EMNW; unused by the other families

  AlternativeModel at(double theta) const { return AlternativeModel(family, theta, beta); }
};

// h_a(x, y) with the mean mu plugged in; E[h_a(X1, X2)] over iid X's is the
// limit of T/n. For a > 0 the expression differs from the pair kernel of the
// scaled values by terms that vanish in expectation.
double h_kernel(TuningParam a, double x, double y, double mu);

// E[h_a(X1, X2)] by 2-D quadrature against the model density.
double expected_h(const AlternativeModel& model, TuningParam a);

enum class SlopeRoute {
  Contrast,  // Delta_a of the scaled model, \int z^2 e^{-ay}: no cancellation
  Kernel,    // \iint h_a g g: cancels O(1) terms, fine for theta away from 0
};

// Limit in probability b_{T_a}(theta) of T/n under g(.; theta).
double b_of_theta(const FamilySpec& family, TuningParam a, double theta,
                  SlopeRoute route = SlopeRoute::Contrast);

struct Curvature {
  double b2;                    // extrapolated b''(0)
  std::array<double, 3> ratio;  // 2 b(theta) / theta^2 at theta = 0.02, 0.01, 0.005
  std::array<double, 2> first_order;  // 2 r(h) - r(2h) at h = 0.01, 0.005
};

// b''(0) from r(theta) = 2 b(theta)/theta^2 = b''(0) + c theta + O(theta^2):
// two first-order Richardson estimates, then a second-order combination.
// Throws InconsistentExtrapolation if the two first-order estimates differ
// by more than 1%.
Curvature slope_curvature(const FamilySpec& family, TuningParam a);

// Kullback-Leibler information numbers as stated for the reference families
// (EMNW only for beta = 3). Throws UnsupportedFamily otherwise.
double kl_number(const FamilySpec& family);

// \int (d_theta g)^2 / g dx - mu'(0)^2 with theta-derivatives by finite
// differences of step h (one-sided for families defined only for theta >= 0).
double kl_numeric(const FamilySpec& family, double h = 1e-4);

struct SlopeResult {
  double a;
  Family family;
  double b2;
  double kl;
  double lambda1;
  double eff;
};

SlopeResult efficiency(const FamilySpec& family, TuningParam a);

}  // namespace mrl

#endif  // MRL_BAHADUR_HPP_
