#ifndef MRL_PEARSON_HPP_
#define MRL_PEARSON_HPP_

#include <string_view>

namespace mrl {

struct PearsonMoments {
  double mean;
  double variance;
  double skewness;
  double kurtosis;  // not excess: 3 for the normal law
};

enum class PearsonType { I, III, IV, V, VI };

std::string_view to_string(PearsonType type);

// Member of the Pearson system matched to four moments. The density solves
// f'/f = -(c1 + y) / (c0 + c1 y + c2 y^2) in the centred variable y = x - mean;
// the family is selected from the roots of the quadratic. Normalisation, cdf
// and quantiles are obtained by quadrature and bisection, with no closed-form
// distribution functions per type.
class PearsonDistribution {
 public:
  // Throws UnsupportedRegion for invalid moments or the normal/type II/VII
  // boundary cases that fall outside types I, III, IV, V and VI.
  explicit PearsonDistribution(const PearsonMoments& moments);

  PearsonType type() const { return type_; }
  double support_lower() const { return mean_ + lower_; }
  double support_upper() const { return mean_ + upper_; }

  double pdf(double x) const;
  double cdf(double x) const;
  // Bisection on the cdf to 1e-8 absolute in x.
  double quantile(double q) const;

 private:
  double log_kernel(double y) const;  // unnormalised log density, centred
  double kernel(double y) const;
  double mass(double y_from, double y_to) const;  // centred, y_from < y_to

  PearsonType type_;
  double mean_;
  double sd_;
  double c0_;
  double c1_;
  double c2_;
  double root1_ = 0.0;
  double root2_ = 0.0;
  double exp1_ = 0.0;
  double exp2_ = 0.0;
  double lower_;
  double upper_;
  double lower_exponent_ = 0.0;  // density ~ (y - lower)^e near a finite lower end
  double upper_exponent_ = 0.0;
  double log_ref_ = 0.0;
  double left_mass_ = 0.0;   // mass on [lower, 0]
  double right_mass_ = 0.0;  // mass on [0, upper]
};

}  // namespace mrl

#endif  // MRL_PEARSON_HPP_
