#ifndef MRL_ERROR_HPP_
#define MRL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mrl {

// Invalid observations or unparseable input data.
class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature (or another iterative method) failed to reach the
// requested tolerance within its budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Moment pair outside the implemented Pearson types.
class UnsupportedRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plug-in variance estimate is too close to zero for a normal approximation.
class DegenerateVariance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Richardson estimates of the slope curvature disagree.
class InconsistentExtrapolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mrl

#endif  // MRL_ERROR_HPP_
