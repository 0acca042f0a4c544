#ifndef CIRCLENS_ERRORS_HPP
#define CIRCLENS_ERRORS_HPP

#include <stdexcept>

namespace circlens {

/// Raised when a computation is well posed but fails numerically
/// (quadrature or Nystrom non-convergence, truncation bound not reached,
/// singular solve). Invalid input is reported with std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circlens

#endif  // CIRCLENS_ERRORS_HPP
