#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "pkepler/ode.hpp"
#include "pkepler/pauli.hpp"
#include "pkepler/twistor.hpp"

namespace pkepler {

// Smooth function of four real arguments together with its gradient.
struct SmoothFn4 {
  std::function<double(const std::array<double, 4>&)> value;
  std::function<std::array<double, 4>(const std::array<double, 4>&)> grad;
};

SmoothFn4 smooth_constant(double c);
SmoothFn4 smooth_affine(double c0, const std::array<double, 4>& c);
SmoothFn4 smooth_sum();  // affine with unit coefficients and zero offset
// Fallback for user-defined functions: central-difference gradient, step 1e-6.
SmoothFn4 smooth_fd(std::function<double(const std::array<double, 4>&)> f);

// Parameters of the four-oscillator family
//   H = H0(|eta1|^2, |eta2|^2, |xi1|^2, |xi2|^2)
//     + G0(...) (eta1^k eta2^-k xi1^l xi2^-l + c.c.)
// with z^k meaning conj(z)^-k for negative k.  (k, l) = (0, 0) is rejected
// wherever the primed linear map must be inverted.
struct OscillatorParams {
  int k = 1, l = 1;
  SmoothFn4 h0 = smooth_sum();
  SmoothFn4 g0 = smooth_constant(0.0);
};

struct ComplexState {
  Spinor eta, xi;
};

// Action-angle chart (I0, J0, I3', J3', phi0, psi0, phi3', psi3').  Angles
// are radians, unwrapped along trajectories.
struct CanonicalState {
  double I0 = 0, J0 = 0, I3p = 0, J3p = 0;
  double phi0 = 0, psi0 = 0, phi3p = 0, psi3p = 0;
};

double hamiltonian_full(const ComplexState& s, const OscillatorParams& p);

// The same Hamiltonian as a function of the momentum-map components
// (I_mu, J_nu):  H0~(I0,J0,I3,J3) + G0~(...) 2 Re[(I1+iI2)^k (J1+iJ2)^l].
double hamiltonian_r(const std::array<double, 4>& I,
                     const std::array<double, 4>& J,
                     const OscillatorParams& p);

// Chart changes.  to_canonical returns principal-value angles; the overload
// taking `prev` selects the branch nearest to a previous state (continuous
// unwrapping along a trajectory).  Rejects vanishing moduli (chart boundary),
// naming the coordinate.
CanonicalState to_canonical(const ComplexState& s, const OscillatorParams& p);
CanonicalState to_canonical(const ComplexState& s, const OscillatorParams& p,
                            const CanonicalState& prev);
ComplexState from_canonical(const CanonicalState& c, const OscillatorParams& p);

// H~' = H0~'(I0,J0,I3',J3') + G0~'(I0,J0,I3',J3') cos phi3'.
double reduced_hamiltonian(const CanonicalState& c, const OscillatorParams& p);

// H0~', G0~' and their partials with respect to (I0, J0, I3', J3').
struct ReducedTerms {
  double H0p = 0, G0p = 0;
  std::array<double, 4> dH0p{}, dG0p{};
};
ReducedTerms reduced_terms(double I0, double J0, double I3p, double J3p,
                           const OscillatorParams& p);

// Flow of the complex Hamilton equations
//   d eta_k/dt = +i dH/d(conj eta_k),  d xi_k/dt = -i dH/d(conj xi_k),
// integrated as an 8-dimensional real system.  Meta columns: H, I0, J0, J3p.
Trajectory integrate_complex(const ComplexState& s0, const OscillatorParams& p,
                             double t0, double t1, double rel_tol,
                             double abs_tol, std::span<const double> grid);

// Flow of the canonical equations.  The rates of I0, J0, J3' are exact zeros
// in the implemented field.  Rejects contact with the chart boundary (any
// squared modulus below 1e-10) at the contact time.  Meta: H, I0, J0, J3p.
Trajectory integrate_reduced(const CanonicalState& c0,
                             const OscillatorParams& p, double t0, double t1,
                             double rel_tol, double abs_tol,
                             std::span<const double> grid);

// Pack/unpack helpers shared with the CLI and tests.
ComplexState complex_state_from(std::span<const double> y);
std::array<double, 8> complex_state_to(const ComplexState& s);
CanonicalState canonical_state_from(std::span<const double> y);
std::array<double, 8> canonical_state_to(const CanonicalState& c);

// Integrals of motion fixing a quadrature problem for I3'(t).
struct QuadratureConstants {
  double I0 = 0, J0 = 0, J3p = 0, Hval = 0;
};

struct I3Quadrature {
  std::vector<double> values;         // I3' at the requested times
  double turning_lo = 0, turning_hi = 0;
  double half_period = 0;             // time between the turning points
  bool constant = false;              // radicand identically zero
};

// Integration by quadratures of (dI3'/dt)^2 = G0~'^2 - (H - H0~')^2.
// Turning points are located by find_root and the time integrals evaluated
// with inverse-square-root endpoint handling.  phi3p_0 supplies the sign of
// the initial branch (sign of sin phi3'(0)); an exact zero is rejected as
// undetermined unless the radicand vanishes identically.  A double turning
// point raises separatrix_error.
I3Quadrature solve_I3_quadrature(const QuadratureConstants& consts,
                                 const OscillatorParams& p, double I3p_0,
                                 double phi3p_0,
                                 std::span<const double> t_grid);

struct AngleQuadrature {
  std::vector<double> phi0, psi0, phi3p, psi3p;
};

// Quadrature of the four angle equations, whose right-hand sides depend only
// on I3'(t) and the constants.  I3' between grid samples is reconstructed by
// cubic Hermite interpolation with the flow derivative +-sqrt(R).  Rejects
// |G0~'| < 1e-12 anywhere on the path.  Angles are returned unwrapped,
// starting from `angles0` = (phi0, psi0, phi3', psi3') at t_grid[0].
AngleQuadrature solve_angles_quadrature(const QuadratureConstants& consts,
                                        const OscillatorParams& p,
                                        std::span<const double> I3p_of_t,
                                        std::span<const double> t_grid,
                                        const std::array<double, 4>& angles0);

}  // namespace pkepler
