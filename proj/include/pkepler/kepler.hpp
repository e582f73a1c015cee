#pragma once

#include <array>
#include <span>
#include <utility>

#include "pkepler/oscillator.hpp"

namespace pkepler {

// Point of the perturbed-Kepler phase space R^3 x (R^3 \ {0}).
struct PhasePoint {
  std::array<double, 3> y{}, x{};
};

// Runge-Lenz data R0 = |x|(1 + y^2), R = (1 - y^2) x + 2 (x.y) y and angular
// momentum M = 2 x cross y (M0 vanishes identically).
struct ConservedVectors {
  double R0 = 0;
  std::array<double, 3> R{}, M{};
};

// Kustaanheimo-Stiefel transformation
//   y = (theta^+ sigma zeta + zeta^+ sigma theta) / (2 zeta^+ zeta),
//   x = zeta^+ sigma zeta / 2,
// with |x| = zeta^+ zeta / 2.  Rejects zeta = 0.
PhasePoint ks_forward(const Spinor& theta, const Spinor& zeta);

// Gauge-fixed inverse: zeta is the Hopf lift of x with its second component
// real and nonnegative (first component real nonnegative when the second
// vanishes); theta = (y . sigma) zeta.  Rejects |x| below 1e-14.
std::pair<Spinor, Spinor> ks_inverse(const PhasePoint& pt);

// Change between the diagonal pair (eta, xi) and the anti-diagonal pair
// (theta, zeta), theta = (eta + i xi)/sqrt2, zeta = (i eta + xi)/sqrt2.
std::pair<Spinor, Spinor> diag_to_anti(const ComplexState& s);
ComplexState anti_to_diag(const Spinor& theta, const Spinor& zeta);

// KS projection of a diagonal twistor state.
PhasePoint ks_project(const ComplexState& s);

ConservedVectors conserved_vectors(const PhasePoint& pt);

// H_K = |x| (1 + y^2) = R0, the Kepler Hamiltonian in fictitious time.
double hamiltonian_kepler(const PhasePoint& pt);

// Reduced Hamiltonian on (y, x): the (I_mu, J_nu) expression of the
// oscillator family evaluated with I0 = J0 = R0/2 and the vectors
//   I = (1 - y^2) x / 2 + (x.y) y - x cross y,
//   J = (1 - y^2) x / 2 + (x.y) y + x cross y.
// Agrees with hamiltonian_full on the KS-lifted null twistor.
double hamiltonian_pk(const PhasePoint& pt, const OscillatorParams& p);

// Analytic Kepler flow eta(t) = e^{it} eta(0), xi(t) = e^{-it} xi(0) together
// with its KS projection.  Requires a null state (|I0 - J0| < 1e-10).
std::pair<ComplexState, PhasePoint> kepler_flow(const ComplexState& s0,
                                                double t);

// Flow of hamiltonian_pk on (y, x): dy/dt = +dH/dx / 2, dx/dt = -dH/dy / 2,
// which is the KS push-forward of the twistor flow.  Gradients by central
// differences (step 1e-6 * scale).  A collision guard rejects |x| < 1e-10 at
// the failure time.  States are (y1,y2,y3,x1,x2,x3); meta: H, M1..M3, R0.
Trajectory integrate_pk(const PhasePoint& pt0, const OscillatorParams& p,
                        double t0, double t1, double rel_tol, double abs_tol,
                        std::span<const double> grid);

PhasePoint phase_point_from(std::span<const double> y);

// Real time t_r(t) = int_0^t |x(t')| dt' accumulated by composite Simpson on
// the sample grid of a (y, x) trajectory; strictly increasing.
std::vector<double> real_time(const Trajectory& traj);

}  // namespace pkepler
