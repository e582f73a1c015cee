#include "pkepler/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Error coefficients (5th minus embedded 4th order solution).
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients.
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

// PI step controller (Hairer's dopri5 settings).
constexpr double safe = 0.9, facl = 0.2, facr = 10.0, beta = 0.04;
constexpr double expo1 = 0.2 - beta * 0.75;

using Vec = std::vector<double>;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double rtol,
                  double atol) {
  double s = 0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    s += q * q;
  }
  return std::sqrt(s / static_cast<double>(err.size()));
}

double initial_step(const OdeField& f, const Vec& y0, const Vec& f0, double t0,
                    double t1, double rtol, double atol) {
  const std::size_t n = y0.size();
  double dnf = 0, dny = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    dnf += (f0[i] / sc) * (f0[i] / sc);
    dny += (y0[i] / sc) * (y0[i] / sc);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6
                                            : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, t1 - t0);
  // One explicit Euler step to estimate the second derivative.
  Vec y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h * f0[i];
  f(t0 + h, y1, f1);
  double der2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    const double q = (f1[i] - f0[i]) / sc;
    der2 += q * q;
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 =
      (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                       : std::pow(0.01 / der12, 0.2);
  return std::min({100 * h, h1, t1 - t0});
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = b;
  return g;
}

Trajectory integrate_ode(const OdeField& field, std::span<const double> y0,
                         double t0, double t1, double rel_tol, double abs_tol,
                         std::span<const double> sample_grid) {
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw numerical_error("integrate_ode: tolerances must be positive");
  if (!(t1 > t0)) throw numerical_error("integrate_ode: requires t1 > t0");
  for (std::size_t i = 0; i < sample_grid.size(); ++i) {
    if (sample_grid[i] < t0 - 1e-12 || sample_grid[i] > t1 + 1e-12 ||
        (i > 0 && sample_grid[i] < sample_grid[i - 1]))
      throw numerical_error(
          "integrate_ode: sample grid must ascend within [t0, t1]");
  }

  const std::size_t n = y0.size();
  Vec y(y0.begin(), y0.end());
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ynew(n), err(n), tmp(n);

  Trajectory traj;
  traj.times.reserve(sample_grid.size());
  traj.states.reserve(sample_grid.size());
  std::size_t gi = 0;
  // Emit samples at or before the current time (used for t == t0 and exactly
  // reached interior points).
  auto emit_current = [&](double t) {
    while (gi < sample_grid.size() && sample_grid[gi] <= t + 1e-14) {
      traj.times.push_back(sample_grid[gi]);
      traj.states.push_back(y);
      ++gi;
    }
  };

  double t = t0;
  field(t, y, k1);
  emit_current(t);

  const double h_min = 1e-14 * (t1 - t0);
  double h = initial_step(field, y, k1, t0, t1, rel_tol, abs_tol);
  double err_old = 1e-4;

  while (t < t1 && gi < sample_grid.size()) {
    if (h < h_min)
      throw numerical_error("integrate_ode: step size underflow at t = " +
                            std::to_string(t));
    if (t + h > t1) h = t1 - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    field(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    field(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    field(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                           a54 * k4[i]);
    field(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    field(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                            a75 * k5[i] + a76 * k6[i]);
    field(t + h, ynew, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                    e6 * k6[i] + e7 * k7[i]);

    const double en = error_norm(err, y, ynew, rel_tol, abs_tol);
    if (en <= 1.0) {
      // Dense output over [t, t+h] for the grid points inside.
      while (gi < sample_grid.size() && sample_grid[gi] <= t + h + 1e-14) {
        const double ts = std::min(sample_grid[gi], t + h);
        const double th = (ts - t) / h;
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i) {
          const double dy = ynew[i] - y[i];
          const double bspl = h * k1[i] - dy;
          const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                                 d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
          ys[i] = y[i] + th * (dy + (1 - th) * (bspl + th * (dy - h * k7[i] -
                                                             bspl + (1 - th) * r5)));
        }
        traj.times.push_back(sample_grid[gi]);
        traj.states.push_back(std::move(ys));
        ++gi;
      }
      t += h;
      y = ynew;
      std::swap(k1, k7);  // first-same-as-last
      const double en_c = std::max(en, 1e-32);
      double fac = std::pow(en_c, expo1) / std::pow(err_old, beta) / safe;
      fac = std::min(1.0 / facl, std::max(1.0 / facr, fac));
      h /= fac;
      err_old = std::max(en_c, 1e-4);
    } else {
      const double fac =
          std::min(1.0 / facl, std::pow(en, 0.2) / safe);
      h /= fac;
    }
  }
  return traj;
}

}  // namespace pkepler
