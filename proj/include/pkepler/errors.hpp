#pragma once

#include <stdexcept>
#include <string>

namespace pkepler {

// Invalid configuration or arguments rejected at an API boundary.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: singularity, chart boundary, non-convergence.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Double turning point of the action radicand: the motion is asymptotic and
// the periodic quadrature solution does not exist.
class separatrix_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

// Filesystem failure.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pkepler
