#ifndef MRL_SPECIAL_HPP_
#define MRL_SPECIAL_HPP_

#include <functional>
#include <limits>
#include <vector>

namespace mrl {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 200;

  // Throws std::invalid_argument unless all fields are positive.
  void validate() const;
};

// Finite integration interval [lo, hi].
struct Interval {
  double lo;
  double hi;
};

// Half line [lo, inf). The integrand is assumed to decay at least like
// exp(-rate * t); the map t = lo - log(u) / rate sends it to (0, 1].
struct HalfLine {
  double lo = 0.0;
  double rate = 1.0;
};

// Order of J_nu for the eigenproblem, nu = 1/(a+1) in (0, 1].
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  static BesselOrder from_tuning(double a) { return BesselOrder(1.0 / (a + 1.0)); }
  double value() const { return nu_; }

 private:
  double nu_;
};

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value;
  double error;
  int subdivisions;
};

// Globally adaptive 21-point Gauss-Kronrod. Throws NonConvergence when the
// error estimate is still above max(abs_tol, rel_tol*|I|) after
// spec.max_subdivisions intervals.
QuadratureResult integrate_with_error(const Integrand& f, Interval domain,
                                      const QuadratureSpec& spec = {});
QuadratureResult integrate_with_error(const Integrand& f, HalfLine domain,
                                      const QuadratureSpec& spec = {});

double integrate(const Integrand& f, Interval domain, const QuadratureSpec& spec = {});
double integrate(const Integrand& f, HalfLine domain, const QuadratureSpec& spec = {});

// J_nu(x) for x >= 0. Orders in (-1, 2] are supported so that the
// neighbours J_{nu-1}, J_{nu+1} used for derivatives are available.
double bessel_j(double nu, double x);
inline double bessel_j(BesselOrder order, double x) { return bessel_j(order.value(), x); }

// k-th positive zero of J_nu (k >= 1): McMahon start, safeguarded Newton.
double bessel_zero(BesselOrder order, int k);

double gamma_function(double x);

double normal_cdf(double x);
// Phi^{-1}(p); throws std::domain_error outside (0, 1).
double normal_quantile(double p);

// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

}  // namespace mrl

#endif  // MRL_SPECIAL_HPP_
