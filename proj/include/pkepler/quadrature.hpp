#pragma once

#include <functional>

namespace pkepler {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7, K15) quadrature with interval bisection down to
// an absolute error estimate below tol.  Inverse-square-root endpoint
// singularities are detected by probing f at the endpoints and removed by the
// substitution x = a + u^2 (resp. x = b - u^2).  Throws numerical_error when
// the refinement depth limit (60) is exceeded.
double quad_adaptive(const RealFn& f, double a, double b, double tol);

// Same rule without endpoint probing; `left`/`right` force the substitution
// at the respective endpoint.  Used where the caller knows the singularity
// structure (turning-point time integrals).
double quad_adaptive_subst(const RealFn& f, double a, double b, double tol,
                           bool left, bool right);

}  // namespace pkepler
