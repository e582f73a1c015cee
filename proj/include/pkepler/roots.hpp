#pragma once

#include <functional>

namespace pkepler {

// Brent's bracketed root finder.  Requires f(a) f(b) <= 0 (rejected
// otherwise).  Returns a point inside [a, b] with |f| below 1e-12 times the
// bracket's function scale, or with the bracket narrowed below tol.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol = 0.0);

}  // namespace pkepler
