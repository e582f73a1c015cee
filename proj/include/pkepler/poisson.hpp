#pragma once

#include <functional>

#include "pkepler/twistor.hpp"

namespace pkepler {

using TwistorFn = std::function<double(const TwistorVec&)>;

// Poisson bracket of two real-valued observables at a point of the diagonal
// representation,
//   {f,g} = i sum_k (df/d~eta_k dg/deta_k - dg/d~eta_k df/deta_k)
//         - i sum_k (df/d~xi_k  dg/dxi_k  - dg/d~xi_k  df/dxi_k),
// with the Wirtinger derivatives approximated by central differences of step
// 1e-6 * max(1, |coordinate|).  Antisymmetric within discretization error.
// Rejects non-finite function values encountered while stenciling.
double poisson_bracket_numeric(const TwistorFn& f, const TwistorFn& g,
                               const TwistorVec& at);

}  // namespace pkepler
