#pragma once

#include <array>

#include "pkepler/kepler.hpp"
#include "pkepler/oscillator.hpp"

namespace pkepler {

// Worked example with k = 1, l = +-1, constant G0 and H0 the sum of the four
// squared moduli, reduced to null twistors: J0 = I0, J3' = 0, with initial
// condition I3'(0) = 0.  Delta1 = psi3'(0), Delta2 = psi0(0) - phi0(0).
// G0 = 0 is admitted only together with Hval = 4 I0 (the Kepler limit).
struct ExampleParams {
  double I0 = 1.0;
  double G0 = 0.1;
  double Hval = 4.1;
  int l = 1;  // +1 or -1
  double Delta1 = 0.0;
  double Delta2 = 0.0;
  double phi0_0 = 0.0;
};

// lambda+-^2 = I0^2 +- |(Hval - 4 I0) / (2 G0)|, omega = 2 G0 lambda+,
// kappa = lambda- / lambda+.
struct EllipticConstants {
  double lambda_minus = 0, lambda_plus = 0, omega = 0, kappa = 0;
};

// Rejects energies with lambda-^2 < 0 (outside the reachable band).
EllipticConstants example_constants(const ExampleParams& p);

// The oscillator parameters matching the example (k = 1, l = p.l, h0 = sum,
// g0 = constant G0).
OscillatorParams example_oscillator(const ExampleParams& p);

// phi3'(0) = arccos((Hval - 4 I0) / (2 G0 I0^2)), taken in (0, pi) so that
// I3' initially increases for positive omega.
double example_phi3p_initial(const ExampleParams& p);

// I3'(t) = lambda- sn(omega t, kappa); tanh degeneration at kappa = 1.
double i3_closed(double t, const ExampleParams& p, const EllipticConstants& ec);

struct ClosedAngles {
  double phi0 = 0, psi0 = 0, phi3p = 0, psi3p = 0;
};

// phi0 from the incomplete third-kind integral with characteristic
// n = lambda-^2 / I0^2; psi0 = phi0 + Delta2; psi3' = Delta1; phi3' by
// quadrature of its rate equation (see phi3p_closed_log for the closed-form
// cross-check).
ClosedAngles angles_closed(double t, const ExampleParams& p,
                           const EllipticConstants& ec);

// Arctan continuation of the logarithmic antiderivative for phi3'(t); agrees
// with the quadrature path.
double phi3p_closed_log(double t, const ExampleParams& p,
                        const EllipticConstants& ec);

struct ClosedState {
  ComplexState state;
  PhasePoint point;
  std::array<double, 4> I{}, J{};
};

// Full closed-form state: eta/xi from the explicit time dependence, the
// phase point through the KS pipeline, and the (I_mu, J_nu) components.
ClosedState state_closed(double t, const ExampleParams& p,
                         const EllipticConstants& ec);

}  // namespace pkepler
