#include "pkepler/kepler.hpp"

#include <cmath>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

constexpr cplx I{0.0, 1.0};

using V3 = std::array<double, 3>;

double dot3(const V3& a, const V3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm3(const V3& a) { return std::sqrt(dot3(a, a)); }

V3 cross3(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

PhasePoint ks_forward(const Spinor& theta, const Spinor& zeta) {
  const double nz = norm2(zeta);
  if (nz <= 1e-14)
    throw numerical_error("ks_forward: zeta = 0 (outside the KS domain)");
  PhasePoint pt;
  for (int k = 0; k < 3; ++k) {
    const Mat2& sk = pauli(k + 1);
    pt.y[k] = std::real(dot(theta, sk * zeta) + dot(zeta, sk * theta)) /
              (2.0 * nz);
    pt.x[k] = 0.5 * std::real(dot(zeta, sk * zeta));
  }
  return pt;
}

std::pair<Spinor, Spinor> ks_inverse(const PhasePoint& pt) {
  const double r = norm3(pt.x);
  if (r <= 1e-14)
    throw numerical_error("ks_inverse: |x| vanishes (collision point)");
  // The Hopf lift solves zeta zeta^+ = r s0 + x . sigma.
  Spinor zeta;
  const double m2 = r - pt.x[2];
  if (m2 > 1e-14 * r) {
    zeta.c2 = std::sqrt(m2);
    zeta.c1 = cplx(pt.x[0], pt.x[1]) / zeta.c2.real();
  } else {
    zeta.c1 = std::sqrt(r + pt.x[2]);
    zeta.c2 = cplx(pt.x[0], -pt.x[1]) / zeta.c1.real();
  }
  // theta = Y zeta with the traceless representative Y = y . sigma.
  Mat2 Y;
  Y.e = {cplx(pt.y[2], 0.0), cplx(pt.y[0], pt.y[1]), cplx(pt.y[0], -pt.y[1]),
         cplx(-pt.y[2], 0.0)};
  return {Y * zeta, zeta};
}

std::pair<Spinor, Spinor> diag_to_anti(const ComplexState& s) {
  const cplx w = 1.0 / std::sqrt(2.0);
  return {w * (s.eta + I * s.xi), w * (I * s.eta + s.xi)};
}

ComplexState anti_to_diag(const Spinor& theta, const Spinor& zeta) {
  const cplx w = 1.0 / std::sqrt(2.0);
  ComplexState s;
  s.eta = w * (theta - I * zeta);
  s.xi = w * (cplx(-1.0) * I * theta + zeta);
  return s;
}

PhasePoint ks_project(const ComplexState& s) {
  const auto [theta, zeta] = diag_to_anti(s);
  return ks_forward(theta, zeta);
}

ConservedVectors conserved_vectors(const PhasePoint& pt) {
  const double y2 = dot3(pt.y, pt.y);
  const double xy = dot3(pt.x, pt.y);
  ConservedVectors cv;
  cv.R0 = norm3(pt.x) * (1.0 + y2);
  const V3 xxy = cross3(pt.x, pt.y);
  for (int k = 0; k < 3; ++k) {
    cv.R[k] = (1.0 - y2) * pt.x[k] + 2.0 * xy * pt.y[k];
    cv.M[k] = 2.0 * xxy[k];
  }
  return cv;
}

double hamiltonian_kepler(const PhasePoint& pt) {
  return norm3(pt.x) * (1.0 + dot3(pt.y, pt.y));
}

double hamiltonian_pk(const PhasePoint& pt, const OscillatorParams& p) {
  const double r = norm3(pt.x);
  if (r <= 0)
    throw numerical_error("hamiltonian_pk: |x| vanishes");
  const double y2 = dot3(pt.y, pt.y);
  const double xy = dot3(pt.x, pt.y);
  const V3 xxy = cross3(pt.x, pt.y);
  const double I0 = 0.5 * r * (1.0 + y2);
  std::array<double, 4> Iv{I0, 0, 0, 0}, Jv{I0, 0, 0, 0};
  for (int k = 0; k < 3; ++k) {
    const double common = 0.5 * (1.0 - y2) * pt.x[k] + xy * pt.y[k];
    Iv[k + 1] = common - xxy[k];
    Jv[k + 1] = common + xxy[k];
  }
  return hamiltonian_r(Iv, Jv, p);
}

std::pair<ComplexState, PhasePoint> kepler_flow(const ComplexState& s0,
                                                double t) {
  const double I0 = 0.5 * norm2(s0.eta), J0 = 0.5 * norm2(s0.xi);
  if (std::abs(I0 - J0) >= 1e-10)
    throw numerical_error("kepler_flow: state is not null (I0 != J0)");
  ComplexState s;
  s.eta = std::exp(I * t) * s0.eta;
  s.xi = std::exp(-I * t) * s0.xi;
  return {s, ks_project(s)};
}

PhasePoint phase_point_from(std::span<const double> y) {
  return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

Trajectory integrate_pk(const PhasePoint& pt0, const OscillatorParams& p,
                        double t0, double t1, double rel_tol, double abs_tol,
                        std::span<const double> grid) {
  const auto field = [&p](double t, std::span<const double> y,
                          std::span<double> dy) {
    PhasePoint pt = phase_point_from(y);
    if (norm3(pt.x) < 1e-10)
      throw numerical_error("integrate_pk: collision guard (|x| < 1e-10) at "
                            "t = " + std::to_string(t));
    // Central-difference gradient of H_PK in all six coordinates.
    std::array<double, 6> gr;
    for (int j = 0; j < 6; ++j) {
      double& c = j < 3 ? pt.y[j] : pt.x[j - 3];
      const double c0 = c;
      const double h = 1e-6 * std::max(1.0, std::abs(c0));
      c = c0 + h;
      const double fp = hamiltonian_pk(pt, p);
      c = c0 - h;
      const double fm = hamiltonian_pk(pt, p);
      c = c0;
      gr[j] = (fp - fm) / (2 * h);
    }
    // dy/dt = +dH/dx / 2, dx/dt = -dH/dy / 2 (the KS push-forward of the
    // twistor flow; see conservation and lift-project tests).
    for (int k = 0; k < 3; ++k) {
      dy[k] = 0.5 * gr[3 + k];
      dy[3 + k] = -0.5 * gr[k];
    }
  };
  std::array<double, 6> y0 = {pt0.y[0], pt0.y[1], pt0.y[2],
                              pt0.x[0], pt0.x[1], pt0.x[2]};
  Trajectory traj = integrate_ode(field, y0, t0, t1, rel_tol, abs_tol, grid);
  auto& mh = traj.meta["H"];
  auto& m1 = traj.meta["M1"];
  auto& m2 = traj.meta["M2"];
  auto& m3 = traj.meta["M3"];
  auto& mr = traj.meta["R0"];
  for (const auto& y : traj.states) {
    const PhasePoint pt = phase_point_from(y);
    const ConservedVectors cv = conserved_vectors(pt);
    mh.push_back(hamiltonian_pk(pt, p));
    m1.push_back(cv.M[0]);
    m2.push_back(cv.M[1]);
    m3.push_back(cv.M[2]);
    mr.push_back(cv.R0);
  }
  return traj;
}

std::vector<double> real_time(const Trajectory& traj) {
  const std::size_t n = traj.times.size();
  if (n == 0 || traj.states.empty() || traj.states[0].size() < 6)
    throw numerical_error("real_time: trajectory lacks (y, x) samples");
  std::vector<double> r(n, 0.0);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = traj.states[i];
    f[i] = std::sqrt(s[3] * s[3] + s[4] * s[4] + s[5] * s[5]);
  }
  // Cumulative Simpson: integrate the local quadratic through three
  // neighbouring samples over each interval.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = (i == 0) ? 0 : i - 1;  // quadratic through j..j+2
    if (n < 3) {
      r[i + 1] = r[i] + 0.5 * (f[i] + f[i + 1]) * (traj.times[i + 1] -
                                                   traj.times[i]);
      continue;
    }
    const std::size_t q = std::min(j, n - 3);
    const double t0 = traj.times[q], t1 = traj.times[q + 1],
                 t2 = traj.times[q + 2];
    const double f0 = f[q], f1 = f[q + 1], f2 = f[q + 2];
    // Lagrange quadratic coefficients integrated over [a, b].
    const auto integral = [&](double a, double b) {
      const auto term = [&](double fa, double ta, double tb, double tc) {
        // int (t - tb)(t - tc) dt / ((ta - tb)(ta - tc))
        const auto prim = [&](double t) {
          return t * t * t / 3.0 - 0.5 * (tb + tc) * t * t + tb * tc * t;
        };
        return fa * (prim(b) - prim(a)) / ((ta - tb) * (ta - tc));
      };
      return term(f0, t0, t1, t2) + term(f1, t1, t0, t2) + term(f2, t2, t0, t1);
    };
    r[i + 1] = r[i] + integral(traj.times[i], traj.times[i + 1]);
  }
  return r;
}

}  // namespace pkepler
