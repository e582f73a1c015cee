#include "pkepler/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "pkepler/elliptic.hpp"
#include "pkepler/errors.hpp"
#include "pkepler/quadrature.hpp"

namespace pkepler {

namespace {

constexpr cplx I{0.0, 1.0};

void validate(const ExampleParams& p) {
  if (!(p.I0 > 0))
    throw numerical_error("example: requires I0 > 0");
  if (p.l != 1 && p.l != -1)
    throw numerical_error("example: l must be +1 or -1");
  if (p.G0 == 0.0 && p.Hval != 4.0 * p.I0)
    throw numerical_error(
        "example: G0 = 0 is admissible only at the Kepler energy Hval = 4 I0");
}

bool separatrix_case(const ExampleParams& p, const EllipticConstants& ec) {
  return ec.kappa == 1.0 || p.Hval == 4.0 * p.I0;
}

}  // namespace

EllipticConstants example_constants(const ExampleParams& p) {
  validate(p);
  EllipticConstants ec;
  const double dH = p.Hval - 4.0 * p.I0;
  const double shift = p.G0 == 0.0 ? 0.0 : std::abs(dH / (2.0 * p.G0));
  const double lm2 = p.I0 * p.I0 - shift;
  const double lp2 = p.I0 * p.I0 + shift;
  if (lm2 < 0)
    throw numerical_error(
        "example_constants: lambda-^2 < 0 (energy outside the reachable band)");
  ec.lambda_minus = std::sqrt(lm2);
  ec.lambda_plus = std::sqrt(lp2);
  ec.omega = 2.0 * p.G0 * ec.lambda_plus;
  ec.kappa = ec.lambda_minus / ec.lambda_plus;
  return ec;
}

OscillatorParams example_oscillator(const ExampleParams& p) {
  OscillatorParams op;
  op.k = 1;
  op.l = p.l;
  op.h0 = smooth_sum();
  op.g0 = smooth_constant(p.G0);
  return op;
}

double example_phi3p_initial(const ExampleParams& p) {
  validate(p);
  if (p.G0 == 0.0) return 0.5 * std::numbers::pi;
  const double c = (p.Hval - 4.0 * p.I0) / (2.0 * p.G0 * p.I0 * p.I0);
  if (std::abs(c) > 1.0)
    throw numerical_error(
        "example_phi3p_initial: energy unreachable from I3'(0) = 0");
  return std::acos(c);
}

double i3_closed(double t, const ExampleParams& p,
                 const EllipticConstants& ec) {
  validate(p);
  if (separatrix_case(p, ec))
    return ec.lambda_minus * std::tanh(ec.omega * t);
  return ec.lambda_minus *
         jacobi_sn_cn_dn(ec.omega * t, EllipticModulus(ec.kappa)).sn;
}

ClosedAngles angles_closed(double t, const ExampleParams& p,
                           const EllipticConstants& ec) {
  validate(p);
  ClosedAngles a;
  a.psi3p = p.Delta1;
  const double dH = p.Hval - 4.0 * p.I0;
  if (separatrix_case(p, ec)) {
    // Vanishing coupling term: phi0 advances at rate 2, phi3' is frozen.
    a.phi0 = p.phi0_0 + 2.0 * t;
    a.psi0 = a.phi0 + p.Delta2;
    a.phi3p = example_phi3p_initial(p);
    return a;
  }
  const EllipticModulus kap(ec.kappa);
  const double am = jacobi_am(ec.omega * t, kap);
  const double n = ec.lambda_minus * ec.lambda_minus / (p.I0 * p.I0);
  a.phi0 = p.phi0_0 + 2.0 * t +
           dH / (p.I0 * ec.omega) * elliptic_Pi_incomplete(n, am, kap);
  a.psi0 = a.phi0 + p.Delta2;
  // phi3' by quadrature of d phi3'/dt = -2 I3' (Hval - 4 I0) / (I0^2 - I3'^2).
  const auto rate = [&](double s) {
    const double i3 = i3_closed(s, p, ec);
    return -2.0 * i3 * dH / (p.I0 * p.I0 - i3 * i3);
  };
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  a.phi3p = example_phi3p_initial(p) +
            (t >= 0 ? quad_adaptive_subst(rate, 0.0, t, tol, false, false)
                    : -quad_adaptive_subst(rate, t, 0.0, tol, false, false));
  return a;
}

double phi3p_closed_log(double t, const ExampleParams& p,
                        const EllipticConstants& ec) {
  validate(p);
  if (separatrix_case(p, ec)) return example_phi3p_initial(p);
  const double dH = p.Hval - 4.0 * p.I0;
  const double n = ec.lambda_minus * ec.lambda_minus / (p.I0 * p.I0);
  const double kap2 = ec.kappa * ec.kappa;
  // Antiderivative of -2 I3' dH / (I0^2 - I3'^2) dt in terms of cn, dn:
  // atan(cn sqrt(n - kappa^2) / (sqrt(1-n) dn)), continued through the
  // turning points (n > kappa^2 and n < 1 hold strictly off the separatrix).
  const JacobiSCD j = jacobi_sn_cn_dn(ec.omega * t, EllipticModulus(ec.kappa));
  const double rq = std::sqrt(n - kap2) / std::sqrt(1.0 - n);
  const double F = std::atan(j.cn * rq / j.dn);
  const double F0 = std::atan(rq);
  const double C = 2.0 * ec.lambda_minus * dH /
                   (p.I0 * p.I0 * ec.omega * std::sqrt(1.0 - n) *
                    std::sqrt(n - kap2));
  return example_phi3p_initial(p) - C * (F0 - F);
}

ClosedState state_closed(double t, const ExampleParams& p,
                         const EllipticConstants& ec) {
  const double i3 = i3_closed(t, p, ec);
  const ClosedAngles a = angles_closed(t, p, ec);
  const double mp = p.I0 + i3, mm = p.I0 - i3;
  if (mp < 0 || mm < 0)
    throw numerical_error("state_closed: |I3'| exceeds I0");

  // Explicit time dependence of the complex coordinates; the conjugation
  // pattern of xi depends on the sign of l.
  const double half = p.l > 0 ? 0.5 * (a.phi3p + p.Delta1)
                              : 0.5 * (a.phi3p - p.Delta1);
  ClosedState cs;
  cs.state.eta.c1 = std::sqrt(mp) * std::exp(I * (0.5 * (a.phi0 + half)));
  cs.state.eta.c2 = std::sqrt(mm) * std::exp(I * (0.5 * (a.phi0 - half)));
  const cplx f1 = std::exp(-I * (0.5 * (p.Delta2 + p.Delta1)));
  const cplx f2 = std::exp(-I * (0.5 * (p.Delta2 - p.Delta1)));
  if (p.l > 0) {
    cs.state.xi.c1 = f1 * std::conj(cs.state.eta.c2);
    cs.state.xi.c2 = f2 * std::conj(cs.state.eta.c1);
  } else {
    cs.state.xi.c1 = f1 * std::conj(cs.state.eta.c1);
    cs.state.xi.c2 = f2 * std::conj(cs.state.eta.c2);
  }
  cs.point = ks_project(cs.state);

  const double rad = std::sqrt(mp * mm);  // sqrt(I0^2 - I3'^2)
  const double au = 0.5 * (a.phi3p + p.Delta1);
  const double al = 0.5 * (a.phi3p - p.Delta1);
  cs.I[0] = p.I0;
  cs.J[0] = p.I0;
  if (p.l > 0) {
    cs.I[1] = rad * std::cos(au);
    cs.I[2] = rad * std::sin(au);
    cs.J[1] = rad * std::cos(al);
    cs.J[2] = rad * std::sin(al);
    cs.I[3] = i3;
    cs.J[3] = -i3;
  } else {
    cs.I[1] = rad * std::cos(al);
    cs.I[2] = rad * std::sin(al);
    cs.J[1] = rad * std::cos(au);
    cs.J[2] = -rad * std::sin(au);
    cs.I[3] = i3;
    cs.J[3] = i3;
  }
  return cs;
}

}  // namespace pkepler
