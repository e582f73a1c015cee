#include "pkepler/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pkepler/errors.hpp"
#include "pkepler/quadrature.hpp"
#include "pkepler/roots.hpp"

namespace pkepler {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

double sign(double x) { return x < 0 ? -1.0 : 1.0; }

// z^k with the convention z^k = conj(z)^(-k) for k < 0.
cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

cplx zpow(cplx z, int k) {
  return k >= 0 ? ipow(z, k) : ipow(std::conj(z), -k);
}

// Wirtinger derivatives of zpow: d/dz and d/d(conj z).
cplx dz_zpow(cplx z, int k) {
  return k > 0 ? cplx(k, 0.0) * ipow(z, k - 1) : cplx{};
}

cplx dzbar_zpow(cplx z, int k) {
  return k < 0 ? cplx(-k, 0.0) * ipow(std::conj(z), -k - 1) : cplx{};
}

std::array<double, 4> moduli2(const ComplexState& s) {
  return {std::norm(s.eta.c1), std::norm(s.eta.c2), std::norm(s.xi.c1),
          std::norm(s.xi.c2)};
}

void check_kl(const OscillatorParams& p) {
  if (p.k == 0 && p.l == 0)
    throw numerical_error("oscillator: (k, l) = (0, 0) is not allowed");
}

// The interaction monomial T = eta1^k eta2^-k xi1^l xi2^-l and the
// derivatives dH/d(conj z_j) of the full Hamiltonian.
struct FullGradient {
  double H;
  std::array<cplx, 4> dbar;  // d/d(conj eta1), conj eta2, conj xi1, conj xi2
};

FullGradient full_gradient(const ComplexState& s, const OscillatorParams& p) {
  const std::array<double, 4> m = moduli2(s);
  const std::array<cplx, 4> z = {s.eta.c1, s.eta.c2, s.xi.c1, s.xi.c2};
  const std::array<int, 4> ex = {p.k, -p.k, p.l, -p.l};

  std::array<cplx, 4> fac;
  for (int j = 0; j < 4; ++j) fac[j] = zpow(z[j], ex[j]);
  const cplx T = fac[0] * fac[1] * fac[2] * fac[3];
  const double inter = 2.0 * std::real(T);

  const double h = p.h0.value(m);
  const double g = p.g0.value(m);
  const std::array<double, 4> hg = p.h0.grad(m);
  const std::array<double, 4> gg = p.g0.grad(m);

  FullGradient r;
  r.H = h + g * inter;
  for (int j = 0; j < 4; ++j) {
    cplx others = 1.0;
    for (int i = 0; i < 4; ++i)
      if (i != j) others *= fac[i];
    const cplx dT_dbar = dzbar_zpow(z[j], ex[j]) * others;
    const cplx dT_dz = dz_zpow(z[j], ex[j]) * others;
    r.dbar[j] = (hg[j] + gg[j] * inter) * z[j] +
                g * (dT_dbar + std::conj(dT_dz));
  }
  return r;
}

double wrap_near(double angle, double ref) {
  return angle + two_pi * std::round((ref - angle) / two_pi);
}

}  // namespace

SmoothFn4 smooth_constant(double c) {
  SmoothFn4 f;
  f.value = [c](const std::array<double, 4>&) { return c; };
  f.grad = [](const std::array<double, 4>&) {
    return std::array<double, 4>{};
  };
  return f;
}

SmoothFn4 smooth_affine(double c0, const std::array<double, 4>& c) {
  SmoothFn4 f;
  f.value = [c0, c](const std::array<double, 4>& x) {
    return c0 + c[0] * x[0] + c[1] * x[1] + c[2] * x[2] + c[3] * x[3];
  };
  f.grad = [c](const std::array<double, 4>&) { return c; };
  return f;
}

SmoothFn4 smooth_sum() { return smooth_affine(0.0, {1.0, 1.0, 1.0, 1.0}); }

SmoothFn4 smooth_fd(std::function<double(const std::array<double, 4>&)> fn) {
  SmoothFn4 f;
  f.value = fn;
  f.grad = [fn](const std::array<double, 4>& x) {
    std::array<double, 4> g;
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
      std::array<double, 4> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      g[j] = (fn(xp) - fn(xm)) / (2 * h);
    }
    return g;
  };
  return f;
}

double hamiltonian_full(const ComplexState& s, const OscillatorParams& p) {
  const std::array<double, 4> m = moduli2(s);
  const cplx T = zpow(s.eta.c1, p.k) * zpow(s.eta.c2, -p.k) *
                 zpow(s.xi.c1, p.l) * zpow(s.xi.c2, -p.l);
  return p.h0.value(m) + p.g0.value(m) * 2.0 * std::real(T);
}

double hamiltonian_r(const std::array<double, 4>& Iv,
                     const std::array<double, 4>& Jv,
                     const OscillatorParams& p) {
  const std::array<double, 4> args = {Iv[0] + Iv[3], Iv[0] - Iv[3],
                                      Jv[0] + Jv[3], Jv[0] - Jv[3]};
  const cplx T = zpow(cplx(Iv[1], Iv[2]), p.k) * zpow(cplx(Jv[1], Jv[2]), p.l);
  return p.h0.value(args) + p.g0.value(args) * 2.0 * std::real(T);
}

CanonicalState to_canonical(const ComplexState& s, const OscillatorParams& p) {
  check_kl(p);
  const std::array<double, 4> m = moduli2(s);
  static const char* names[4] = {"eta1", "eta2", "xi1", "xi2"};
  for (int j = 0; j < 4; ++j)
    if (std::sqrt(m[j]) <= 1e-12)
      throw numerical_error(std::string("to_canonical: vanishing modulus of ") +
                            names[j] + " (chart boundary)");
  CanonicalState c;
  c.I0 = 0.5 * (m[0] + m[1]);
  c.J0 = 0.5 * (m[2] + m[3]);
  const double I3 = 0.5 * (m[0] - m[1]);
  const double J3 = 0.5 * (m[2] - m[3]);
  const double kl2 = static_cast<double>(p.k * p.k + p.l * p.l);
  c.I3p = (p.k * I3 - p.l * J3) / kl2;
  c.J3p = (p.l * I3 + p.k * J3) / kl2;

  const double u1 = std::arg(s.eta.c1), u2 = std::arg(s.eta.c2);
  const double v1 = std::arg(s.xi.c1), v2 = std::arg(s.xi.c2);
  const double phi0 = u1 + u2, phi3 = u1 - u2;
  const double psi0 = -(v1 + v2), psi3 = v2 - v1;
  c.phi0 = phi0;
  c.psi0 = psi0;
  c.phi3p = p.k * phi3 - p.l * psi3;
  c.psi3p = p.l * phi3 + p.k * psi3;
  return c;
}

CanonicalState to_canonical(const ComplexState& s, const OscillatorParams& p,
                            const CanonicalState& prev) {
  CanonicalState c = to_canonical(s, p);
  const double kl2 = static_cast<double>(p.k * p.k + p.l * p.l);
  // Reference single-oscillator phases from the previous state.
  const double pphi3 = (p.k * prev.phi3p + p.l * prev.psi3p) / kl2;
  const double ppsi3 = (-p.l * prev.phi3p + p.k * prev.psi3p) / kl2;
  const double pu1 = 0.5 * (prev.phi0 + pphi3);
  const double pu2 = 0.5 * (prev.phi0 - pphi3);
  const double pv1 = -0.5 * (prev.psi0 + ppsi3);
  const double pv2 = -0.5 * (prev.psi0 - ppsi3);

  const double phi3 = (p.k * c.phi3p + p.l * c.psi3p) / kl2;
  const double psi3 = (-p.l * c.phi3p + p.k * c.psi3p) / kl2;
  const double u1 = wrap_near(0.5 * (c.phi0 + phi3), pu1);
  const double u2 = wrap_near(0.5 * (c.phi0 - phi3), pu2);
  const double v1 = wrap_near(-0.5 * (c.psi0 + psi3), pv1);
  const double v2 = wrap_near(-0.5 * (c.psi0 - psi3), pv2);
  c.phi0 = u1 + u2;
  c.psi0 = -(v1 + v2);
  c.phi3p = p.k * (u1 - u2) - p.l * (v2 - v1);
  c.psi3p = p.l * (u1 - u2) + p.k * (v2 - v1);
  return c;
}

ComplexState from_canonical(const CanonicalState& c,
                            const OscillatorParams& p) {
  check_kl(p);
  if (!(c.I0 > 0) || !(c.J0 > 0))
    throw numerical_error("from_canonical: requires I0 > 0 and J0 > 0");
  const double I3 = p.k * c.I3p + p.l * c.J3p;
  const double J3 = -p.l * c.I3p + p.k * c.J3p;
  std::array<double, 4> m = {c.I0 + I3, c.I0 - I3, c.J0 + J3, c.J0 - J3};
  for (double& v : m) {
    if (v < -1e-12)
      throw numerical_error(
          "from_canonical: negative squared modulus (invariant-box violation)");
    if (v < 0) v = 0;
  }
  const double kl2 = static_cast<double>(p.k * p.k + p.l * p.l);
  const double phi3 = (p.k * c.phi3p + p.l * c.psi3p) / kl2;
  const double psi3 = (-p.l * c.phi3p + p.k * c.psi3p) / kl2;
  ComplexState s;
  s.eta.c1 = std::sqrt(m[0]) * std::exp(I * (0.5 * (c.phi0 + phi3)));
  s.eta.c2 = std::sqrt(m[1]) * std::exp(I * (0.5 * (c.phi0 - phi3)));
  s.xi.c1 = std::sqrt(m[2]) * std::exp(-I * (0.5 * (c.psi0 + psi3)));
  s.xi.c2 = std::sqrt(m[3]) * std::exp(-I * (0.5 * (c.psi0 - psi3)));
  return s;
}

ReducedTerms reduced_terms(double I0, double J0, double I3p, double J3p,
                           const OscillatorParams& p) {
  check_kl(p);
  const double k = p.k, l = p.l;
  const double I3 = k * I3p + l * J3p;
  const double J3 = -l * I3p + k * J3p;
  const std::array<double, 4> u = {I0 + I3, I0 - I3, J0 + J3, J0 - J3};

  const double h = p.h0.value(u);
  const double g = p.g0.value(u);
  const std::array<double, 4> hg = p.h0.grad(u);
  const std::array<double, 4> gg = p.g0.grad(u);

  // Chain rule through the argument map u(I0, J0, I3', J3').
  auto chain = [&](const std::array<double, 4>& fg) {
    return std::array<double, 4>{
        fg[0] + fg[1], fg[2] + fg[3],
        (fg[0] - fg[1]) * k - (fg[2] - fg[3]) * l,
        (fg[0] - fg[1]) * l + (fg[2] - fg[3]) * k};
  };
  const std::array<double, 4> dh = chain(hg);
  const std::array<double, 4> dg = chain(gg);

  const double A = u[0] * u[1];  // I0^2 - I3^2
  const double B = u[2] * u[3];  // J0^2 - J3^2
  const double ka = 0.5 * std::abs(p.k), la = 0.5 * std::abs(p.l);
  const double Ak = p.k == 0 ? 1.0 : std::pow(A, ka);
  const double Bl = p.l == 0 ? 1.0 : std::pow(B, la);
  // d(A^ka)/dv = ka A^(ka-1) dA/dv, with dA over (I0, J0, I3', J3').
  const std::array<double, 4> dA = {2 * I0, 0.0, -2 * I3 * k, -2 * I3 * l};
  const std::array<double, 4> dB = {0.0, 2 * J0, 2 * J3 * l, -2 * J3 * k};

  ReducedTerms r;
  r.H0p = h;
  r.dH0p = dh;
  r.G0p = 2.0 * g * Ak * Bl;
  for (int v = 0; v < 4; ++v) {
    double d = dg[v] * Ak * Bl;
    if (p.k != 0) d += g * ka * std::pow(A, ka - 1.0) * dA[v] * Bl;
    if (p.l != 0) d += g * Ak * la * std::pow(B, la - 1.0) * dB[v];
    r.dG0p[v] = 2.0 * d;
  }
  return r;
}

double reduced_hamiltonian(const CanonicalState& c, const OscillatorParams& p) {
  const ReducedTerms rt = reduced_terms(c.I0, c.J0, c.I3p, c.J3p, p);
  return rt.H0p + rt.G0p * std::cos(c.phi3p);
}

ComplexState complex_state_from(std::span<const double> y) {
  ComplexState s;
  s.eta.c1 = {y[0], y[1]};
  s.eta.c2 = {y[2], y[3]};
  s.xi.c1 = {y[4], y[5]};
  s.xi.c2 = {y[6], y[7]};
  return s;
}

std::array<double, 8> complex_state_to(const ComplexState& s) {
  return {s.eta.c1.real(), s.eta.c1.imag(), s.eta.c2.real(), s.eta.c2.imag(),
          s.xi.c1.real(),  s.xi.c1.imag(),  s.xi.c2.real(),  s.xi.c2.imag()};
}

CanonicalState canonical_state_from(std::span<const double> y) {
  return {y[0], y[1], y[2], y[3], y[4], y[5], y[6], y[7]};
}

std::array<double, 8> canonical_state_to(const CanonicalState& c) {
  return {c.I0, c.J0, c.I3p, c.J3p, c.phi0, c.psi0, c.phi3p, c.psi3p};
}

Trajectory integrate_complex(const ComplexState& s0, const OscillatorParams& p,
                             double t0, double t1, double rel_tol,
                             double abs_tol, std::span<const double> grid) {
  const auto field = [&p](double, std::span<const double> y,
                          std::span<double> dy) {
    const FullGradient fg = full_gradient(complex_state_from(y), p);
    const std::array<cplx, 4> rate = {I * fg.dbar[0], I * fg.dbar[1],
                                      -I * fg.dbar[2], -I * fg.dbar[3]};
    for (int j = 0; j < 4; ++j) {
      dy[2 * j] = rate[j].real();
      dy[2 * j + 1] = rate[j].imag();
    }
  };
  Trajectory traj =
      integrate_ode(field, complex_state_to(s0), t0, t1, rel_tol, abs_tol, grid);

  const double kl2 = static_cast<double>(p.k * p.k + p.l * p.l);
  auto& mh = traj.meta["H"];
  auto& mi = traj.meta["I0"];
  auto& mj = traj.meta["J0"];
  auto& mj3 = traj.meta["J3p"];
  for (const auto& y : traj.states) {
    const ComplexState s = complex_state_from(y);
    const IJComponents ij = iju_components(s.eta, s.xi);
    mh.push_back(hamiltonian_full(s, p));
    mi.push_back(ij.I[0]);
    mj.push_back(ij.J[0]);
    mj3.push_back((p.l * ij.I[3] + p.k * ij.J[3]) / kl2);
  }
  return traj;
}

Trajectory integrate_reduced(const CanonicalState& c0,
                             const OscillatorParams& p, double t0, double t1,
                             double rel_tol, double abs_tol,
                             std::span<const double> grid) {
  check_kl(p);
  const auto field = [&p](double t, std::span<const double> y,
                          std::span<double> dy) {
    const double I0 = y[0], J0 = y[1], I3p = y[2], J3p = y[3];
    const double I3 = p.k * I3p + p.l * J3p;
    const double J3 = -p.l * I3p + p.k * J3p;
    const double mmin = std::min(std::min(I0 + I3, I0 - I3),
                                 std::min(J0 + J3, J0 - J3));
    if (mmin < 1e-10)
      throw numerical_error(
          "integrate_reduced: chart boundary contact at t = " +
          std::to_string(t));
    const ReducedTerms rt = reduced_terms(I0, J0, I3p, J3p, p);
    const double cph = std::cos(y[6]), sph = std::sin(y[6]);
    dy[0] = 0.0;
    dy[1] = 0.0;
    dy[2] = rt.G0p * sph;
    dy[3] = 0.0;
    dy[4] = rt.dH0p[0] + rt.dG0p[0] * cph;
    dy[5] = rt.dH0p[1] + rt.dG0p[1] * cph;
    dy[6] = rt.dH0p[2] + rt.dG0p[2] * cph;
    dy[7] = rt.dH0p[3] + rt.dG0p[3] * cph;
  };
  Trajectory traj = integrate_ode(field, canonical_state_to(c0), t0, t1,
                                  rel_tol, abs_tol, grid);
  auto& mh = traj.meta["H"];
  auto& mi = traj.meta["I0"];
  auto& mj = traj.meta["J0"];
  auto& mj3 = traj.meta["J3p"];
  for (const auto& y : traj.states) {
    mh.push_back(reduced_hamiltonian(canonical_state_from(y), p));
    mi.push_back(y[0]);
    mj.push_back(y[1]);
    mj3.push_back(y[3]);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Integration by quadratures of the I3' equation.

namespace {

struct QuadContext {
  const QuadratureConstants* c;
  const OscillatorParams* p;

  double radicand(double s) const {
    const ReducedTerms rt = reduced_terms(c->I0, c->J0, s, c->J3p, *p);
    const double d = c->Hval - rt.H0p;
    return rt.G0p * rt.G0p - d * d;
  }

  double g0p(double s) const {
    return reduced_terms(c->I0, c->J0, s, c->J3p, *p).G0p;
  }
};

// Admissible interval in s from the four (linear) squared moduli.
struct Box {
  double lo, hi;
};

Box box_interval(const QuadratureConstants& c, const OscillatorParams& p,
                 double s0) {
  // m(s) = const + slope * s for each squared modulus.
  const double consts[4] = {c.I0 + p.l * c.J3p, c.I0 - p.l * c.J3p,
                            c.J0 + p.k * c.J3p, c.J0 - p.k * c.J3p};
  const double slopes[4] = {static_cast<double>(p.k),
                            static_cast<double>(-p.k),
                            static_cast<double>(-p.l),
                            static_cast<double>(p.l)};
  Box b{s0 - 1e6, s0 + 1e6};
  for (int i = 0; i < 4; ++i) {
    if (slopes[i] == 0) {
      if (consts[i] < 0)
        throw numerical_error(
            "solve_I3_quadrature: inconsistent constants (modulus < 0)");
      continue;
    }
    const double edge = -consts[i] / slopes[i];
    if (slopes[i] > 0)
      b.lo = std::max(b.lo, edge);
    else
      b.hi = std::min(b.hi, edge);
  }
  if (!(b.lo <= s0 && s0 <= b.hi))
    throw numerical_error(
        "solve_I3_quadrature: initial I3' outside the invariant box");
  return b;
}

// Deflated radicand with exact zeros at the two turning points, together
// with fitted quadratic models c w + q w^2 of its behaviour near each end
// (w = distance from the turning point).  Within w_head of an end the raw
// subtraction G0~'^2 - (H - H0~')^2 is rounding-noise limited and the model
// replaces it; the time over the model zone is integrated in closed form.
struct Leg {
  const QuadContext* qc;
  double lo, hi;
  double e_lo, e_hi;  // radicand residuals subtracted linearly
  double w_head = 0;
  double c_lo = 0, q_lo = 0, c_hi = 0, q_hi = 0;

  double deflated(double s) const {
    const double w = (s - lo) / (hi - lo);
    return qc->radicand(s) - ((1.0 - w) * e_lo + w * e_hi);
  }

  double model(bool from_hi, double w) const {
    return from_hi ? (c_hi + q_hi * w) * w : (c_lo + q_lo * w) * w;
  }

  double value_from(bool from_hi, double w) const {
    if (w <= w_head) return model(from_hi, w);
    const double v = deflated(from_hi ? hi - w : lo + w);
    return v > 0 ? v : model(from_hi, w);
  }

  // int_0^u 2 du' / sqrt(c + q u'^2) with u^2 <= w in the model zone.
  double head_time(bool from_hi, double u) const {
    const double c = from_hi ? c_hi : c_lo;
    const double q = from_hi ? q_hi : q_lo;
    if (std::abs(q) * u * u < 1e-13 * c)
      return 2.0 * u / std::sqrt(c) * (1.0 - q * u * u / (6.0 * c));
    if (q > 0) return 2.0 / std::sqrt(q) * std::asinh(u * std::sqrt(q / c));
    return 2.0 / std::sqrt(-q) *
           std::asin(std::min(1.0, u * std::sqrt(-q / c)));
  }

  // Travel time from the chosen turning point to distance u^2 into the leg.
  double time_from_turning(bool from_hi, double u, double tol) const {
    const double uh = std::sqrt(w_head);
    if (u <= uh) return head_time(from_hi, u);
    const auto g = [&](double v) {
      return 2.0 * v / std::sqrt(value_from(from_hi, v * v));
    };
    return head_time(from_hi, uh) +
           quad_adaptive_subst(g, uh, u, tol, false, false);
  }
};

Leg make_leg(const QuadContext& qc, double lo, double hi) {
  Leg leg;
  leg.qc = &qc;
  leg.lo = lo;
  leg.hi = hi;
  leg.e_lo = qc.radicand(lo);
  leg.e_hi = qc.radicand(hi);
  leg.w_head = 4e-6 * (hi - lo);
  const auto fit = [&](bool from_hi, double& c, double& q) {
    const double w1 = leg.w_head, w2 = 4.0 * leg.w_head;
    const double r1 = leg.deflated(from_hi ? hi - w1 : lo + w1);
    const double r2 = leg.deflated(from_hi ? hi - w2 : lo + w2);
    q = (r2 - 4.0 * r1) / (12.0 * w1 * w1);
    c = (r1 - q * w1 * w1) / w1;
    if (!(c > 0))
      throw separatrix_error(
          "solve_I3_quadrature: degenerate turning point (separatrix)");
  };
  fit(false, leg.c_lo, leg.q_lo);
  fit(true, leg.c_hi, leg.q_hi);
  return leg;
}

double leg_time(const Leg& leg, double tol) {
  const double mid = 0.5 * (leg.lo + leg.hi);
  return leg.time_from_turning(false, std::sqrt(mid - leg.lo), 0.5 * tol) +
         leg.time_from_turning(true, std::sqrt(leg.hi - mid), 0.5 * tol);
}

// Invert budget = time-from-turning within a leg; the position comes back as
// s = turning -+ u^2.
double invert_from_turning(const Leg& leg, bool from_hi, double u_max,
                           double budget, double tol) {
  const double anchor = from_hi ? leg.hi : leg.lo;
  const double dir = from_hi ? -1.0 : 1.0;
  if (budget <= 0) return anchor;
  const double c = from_hi ? leg.c_hi : leg.c_lo;
  double u = std::min(0.99 * u_max, 0.5 * budget * std::sqrt(c));
  if (u <= 0) u = 0.5 * u_max;
  double b_lo = 0.0, b_hi = u_max;
  for (int it = 0; it < 80; ++it) {
    const double res = leg.time_from_turning(from_hi, u, tol) - budget;
    if (std::abs(res) <= 10 * tol) break;
    if (res > 0)
      b_hi = u;
    else
      b_lo = u;
    const double gu = 2.0 * u / std::sqrt(leg.value_from(from_hi, u * u));
    double u_next = gu > 0 ? u - res / gu : 0.5 * (b_lo + b_hi);
    if (!(u_next > b_lo && u_next < b_hi)) u_next = 0.5 * (b_lo + b_hi);
    if (std::abs(u_next - u) < 1e-16 * std::max(1.0, u)) {
      u = u_next;
      break;
    }
    u = u_next;
  }
  return anchor + dir * u * u;
}

// Leg-0 inversion from an interior starting point, used for the first half
// of the initial leg only (positions stay away from both turning points).
double invert_from_interior(const Leg& leg, double s_start, double dir,
                            double budget, double tol) {
  if (budget <= 0) return s_start;
  const auto time_to = [&](double s) {
    const auto g = [&](double x) {
      const double v = leg.deflated(x);
      return v > 0 ? 1.0 / std::sqrt(v) : 1e30;
    };
    return dir * quad_adaptive_subst(g, s_start, s, tol, false, false);
  };
  const double target = dir > 0 ? leg.hi : leg.lo;
  double b_lo = std::min(s_start, target), b_hi = std::max(s_start, target);
  const double v0 = leg.deflated(s_start);
  double s = s_start + dir * budget * std::sqrt(std::max(v0, 0.0));
  if (!(s > b_lo && s < b_hi)) s = 0.5 * (s_start + target);
  for (int it = 0; it < 80; ++it) {
    const double res = time_to(s) - budget;
    if (std::abs(res) <= 10 * tol) return s;
    if (res > 0) {
      if (dir > 0) b_hi = std::min(b_hi, s); else b_lo = std::max(b_lo, s);
    } else {
      if (dir > 0) b_lo = std::max(b_lo, s); else b_hi = std::min(b_hi, s);
    }
    const double v = leg.deflated(s);
    double s_next = v > 0 ? s - dir * res * std::sqrt(v) : 0.5 * (b_lo + b_hi);
    if (!(s_next > b_lo && s_next < b_hi)) s_next = 0.5 * (b_lo + b_hi);
    if (std::abs(s_next - s) < 1e-16 * std::max(1.0, std::abs(s)))
      return s_next;
    s = s_next;
  }
  return s;
}

}  // namespace

I3Quadrature solve_I3_quadrature(const QuadratureConstants& consts,
                                 const OscillatorParams& p, double I3p_0,
                                 double phi3p_0,
                                 std::span<const double> t_grid) {
  check_kl(p);
  const QuadContext q{&consts, &p};
  const Box box = box_interval(consts, p, I3p_0);

  const double R0v = q.radicand(I3p_0);
  const ReducedTerms rt0 = reduced_terms(consts.I0, consts.J0, I3p_0,
                                         consts.J3p, p);
  const double rscale =
      std::max(1.0, rt0.G0p * rt0.G0p +
                        (consts.Hval - rt0.H0p) * (consts.Hval - rt0.H0p));
  if (R0v < -1e-12 * rscale)
    throw numerical_error(
        "solve_I3_quadrature: inconsistent constants (negative radicand at "
        "the initial point)");

  I3Quadrature out;
  out.values.reserve(t_grid.size());

  // Identically vanishing radicand: I3' is frozen.
  const double probe = 1e-4 * (box.hi - box.lo);
  const bool flat0 = std::abs(R0v) <= 1e-12 * rscale;
  if (flat0) {
    const double up = std::min(I3p_0 + probe, box.hi);
    const double dn = std::max(I3p_0 - probe, box.lo);
    if (q.radicand(up) <= 1e-12 * rscale && q.radicand(dn) <= 1e-12 * rscale) {
      out.constant = true;
      out.turning_lo = out.turning_hi = I3p_0;
      for (std::size_t i = 0; i < t_grid.size(); ++i)
        out.values.push_back(I3p_0);
      return out;
    }
    throw numerical_error(
        "solve_I3_quadrature: initial branch undetermined (sin phi3' = 0 at a "
        "turning point); perturb the initial data or use integrate_reduced");
  }
  if (std::abs(std::sin(phi3p_0)) < 1e-14)
    throw numerical_error(
        "solve_I3_quadrature: initial branch undetermined (sin phi3' = 0); "
        "perturb the initial data or use integrate_reduced");
  const double dir0 = sign(rt0.G0p) * sign(std::sin(phi3p_0));

  // Locate the first simple turning point on each side of I3p_0.
  const auto find_turning = [&](double dir) {
    const double edge = dir > 0 ? box.hi : box.lo;
    const int n = 256;
    double sp = I3p_0, Rp = R0v;
    for (int i = 1; i <= n; ++i) {
      const double s = I3p_0 + (edge - I3p_0) * i / n;
      const double Rv = q.radicand(s);
      if (Rv < 0.0) {
        double r = find_root([&](double x) { return q.radicand(x); },
                             std::min(sp, s), std::max(sp, s), 1e-15);
        // Newton polish with a finite-difference slope.
        for (int j = 0; j < 3; ++j) {
          const double h = 1e-7 * std::max(1.0, std::abs(r));
          const double d = (q.radicand(r + h) - q.radicand(r - h)) / (2 * h);
          if (std::abs(d) < 1e-300) break;
          r -= q.radicand(r) / d;
        }
        return r;
      }
      sp = s;
      Rp = Rv;
    }
    (void)Rp;
    throw separatrix_error(
        "solve_I3_quadrature: no simple turning point before the chart "
        "boundary (separatrix; motion is asymptotic, not periodic)");
  };
  const double r_hi = find_turning(+1.0);
  const double r_lo = find_turning(-1.0);
  out.turning_lo = r_lo;
  out.turning_hi = r_hi;

  const Leg leg = make_leg(q, r_lo, r_hi);
  const double qtol = 1e-13;
  const double T_leg = leg_time(leg, qtol);
  out.half_period = T_leg;

  // Time from the initial point to the first turning point hit.
  const bool first_is_hi = dir0 > 0;
  const double r_first = first_is_hi ? r_hi : r_lo;
  const double u0_max = std::sqrt(std::abs(r_first - I3p_0));
  const double T0 = leg.time_from_turning(first_is_hi, u0_max, qtol);

  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (t < 0)
      throw numerical_error("solve_I3_quadrature: negative time requested");
    double s;
    if (t <= T0) {
      if (t <= 0.5 * T0)
        s = invert_from_interior(leg, I3p_0, dir0, t, qtol);
      else
        s = invert_from_turning(leg, first_is_hi, u0_max, T0 - t, qtol);
    } else {
      double rem = t - T0;
      const double nleg = std::floor(rem / T_leg);
      rem -= nleg * T_leg;
      const bool even = (static_cast<long long>(nleg) % 2) == 0;
      // Even legs start at the first turning point reached.
      const bool start_hi = even ? first_is_hi : !first_is_hi;
      const double u_span = std::sqrt(r_hi - r_lo);
      if (rem <= 0.5 * T_leg)
        s = invert_from_turning(leg, start_hi, u_span, rem, qtol);
      else
        s = invert_from_turning(leg, !start_hi, u_span, T_leg - rem, qtol);
    }
    out.values.push_back(s);
  }
  return out;
}

AngleQuadrature solve_angles_quadrature(const QuadratureConstants& consts,
                                        const OscillatorParams& p,
                                        std::span<const double> I3p_of_t,
                                        std::span<const double> t_grid,
                                        const std::array<double, 4>& angles0) {
  check_kl(p);
  if (I3p_of_t.size() != t_grid.size() || t_grid.empty())
    throw numerical_error(
        "solve_angles_quadrature: grid and I3' sequence sizes differ");
  const QuadContext q{&consts, &p};
  const std::size_t n = t_grid.size();

  // Flow derivatives +-sqrt(R) at the samples, signed by the data.
  std::vector<double> deriv(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::sqrt(std::max(0.0, q.radicand(I3p_of_t[i])));
    double sg = 0.0;
    if (n >= 2) {
      const double ahead = i + 1 < n ? I3p_of_t[i + 1] : I3p_of_t[i];
      const double behind = i > 0 ? I3p_of_t[i - 1] : I3p_of_t[i];
      if (ahead != behind) sg = sign(ahead - behind);
    }
    deriv[i] = sg * mag;
  }

  const auto rates = [&](double s) {
    const ReducedTerms rt = reduced_terms(consts.I0, consts.J0, s, consts.J3p, p);
    if (std::abs(rt.G0p) < 1e-12)
      throw numerical_error(
          "solve_angles_quadrature: G0~' vanishes on the path (phase "
          "reconstruction singular)");
    const double c = (consts.Hval - rt.H0p) / rt.G0p;
    return std::array<double, 4>{rt.dH0p[0] + rt.dG0p[0] * c,
                                 rt.dH0p[1] + rt.dG0p[1] * c,
                                 rt.dH0p[2] + rt.dG0p[2] * c,
                                 rt.dH0p[3] + rt.dG0p[3] * c};
  };

  AngleQuadrature out;
  out.phi0.assign(n, angles0[0]);
  out.psi0.assign(n, angles0[1]);
  out.phi3p.assign(n, angles0[2]);
  out.psi3p.assign(n, angles0[3]);

  std::array<double, 4> acc = angles0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double ta = t_grid[i], tb = t_grid[i + 1];
    if (!(tb > ta))
      throw numerical_error("solve_angles_quadrature: grid must ascend");
    const double dt = tb - ta;
    const double s_a = I3p_of_t[i], s_b = I3p_of_t[i + 1];
    const double d_a = deriv[i], d_b = deriv[i + 1];
    const auto hermite = [&](double t) {
      const double th = (t - ta) / dt;
      const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
      const double h10 = th * (1 - th) * (1 - th);
      const double h01 = th * th * (3 - 2 * th);
      const double h11 = th * th * (th - 1);
      return h00 * s_a + h10 * dt * d_a + h01 * s_b + h11 * dt * d_b;
    };
    for (int c = 0; c < 4; ++c) {
      const double inc = quad_adaptive_subst(
          [&](double t) { return rates(hermite(t))[c]; }, ta, tb,
          1e-12 * std::max(1.0, dt), false, false);
      acc[c] += inc;
    }
    out.phi0[i + 1] = acc[0];
    out.psi0[i + 1] = acc[1];
    out.phi3p[i + 1] = acc[2];
    out.psi3p[i + 1] = acc[3];
  }
  return out;
}

}  // namespace pkepler
