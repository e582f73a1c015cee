#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pkepler {

// Time grid, per-sample states, and labeled conserved-quantity columns.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::map<std::string, std::vector<double>> meta;
};

using OdeField =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Embedded Dormand-Prince 5(4) pair with PI step control and 4th-order dense
// output.  States are sampled at the points of `sample_grid` (ascending,
// inside [t0, t1]).  Throws numerical_error when the step size underflows
// below 1e-14 * (t1 - t0), reporting the failure time.
Trajectory integrate_ode(const OdeField& field, std::span<const double> y0,
                         double t0, double t1, double rel_tol, double abs_tol,
                         std::span<const double> sample_grid);

// Uniform grid of n points covering [a, b] inclusive.
std::vector<double> linspace(double a, double b, int n);

}  // namespace pkepler
