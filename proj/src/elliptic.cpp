#include "pkepler/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

constexpr double pi = std::numbers::pi;

struct AgmScale {
  // Descending AGM sequence a_n, b_n, c_n starting from (1, kappa').
  std::array<double, 32> a{}, c{};
  int levels = 0;
};

AgmScale agm_scale(double kappa) {
  AgmScale s;
  double a = 1.0, b = std::sqrt((1.0 - kappa) * (1.0 + kappa)),
         c = kappa;
  int n = 0;
  s.a[0] = a;
  s.c[0] = c;
  while (std::abs(c) > 1e-17 * a && n < 30) {
    const double an = 0.5 * (a + b);
    const double cn = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    c = cn;
    ++n;
    s.a[n] = a;
    s.c[n] = c;
  }
  s.levels = n;
  return s;
}

}  // namespace

EllipticModulus::EllipticModulus(double kappa) : kappa_(kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw numerical_error("EllipticModulus: kappa outside [0, 1]");
}

double elliptic_K(EllipticModulus kappa) {
  const double k = kappa.value();
  if (k == 1.0)
    throw numerical_error("elliptic_K: divergent at kappa = 1");
  if (k == 0.0) return 0.5 * pi;
  const AgmScale s = agm_scale(k);
  return 0.5 * pi / s.a[s.levels];
}

double jacobi_am(double u, EllipticModulus kappa) {
  const double k = kappa.value();
  if (k == 0.0) return u;
  if (k == 1.0) return 2.0 * std::atan(std::tanh(0.5 * u));
  // Descending Landen recursion: phi_N = 2^N a_N u, then
  // phi_{n-1} = (phi_n + asin(c_n/a_n sin phi_n)) / 2.
  const AgmScale s = agm_scale(k);
  double phi = std::ldexp(s.a[s.levels] * u, s.levels);
  for (int n = s.levels; n >= 1; --n) {
    const double r = std::clamp(s.c[n] / s.a[n] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(r));
  }
  return phi;
}

JacobiSCD jacobi_sn_cn_dn(double u, EllipticModulus kappa) {
  const double k = kappa.value();
  if (k == 1.0) {
    const double t = std::tanh(u);
    const double sech = 1.0 / std::cosh(u);
    return {t, sech, sech};
  }
  const double am = jacobi_am(u, kappa);
  JacobiSCD r;
  r.sn = std::sin(am);
  r.cn = std::cos(am);
  r.dn = std::sqrt(std::max(0.0, 1.0 - k * k * r.sn * r.sn));
  return r;
}

double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0 || x + y <= 0 || y + z <= 0 || z + x <= 0)
    throw numerical_error("carlson_rf: arguments outside domain");
  constexpr double errtol = 0.0016;  // relative error ~ errtol^6
  double xt = x, yt = y, zt = z;
  double mu, dx, dy, dz;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

double carlson_rc(double x, double y) {
  if (x < 0 || y <= 0)
    throw numerical_error("carlson_rc: arguments outside domain");
  constexpr double errtol = 0.0012;
  double xt = x, yt = y;
  double mu, s;
  for (int it = 0; it < 200; ++it) {
    const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    mu = (xt + 2.0 * yt) / 3.0;
    s = (yt - xt) / (3.0 * mu);
    if (std::abs(s) < errtol) break;
  }
  return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) /
         std::sqrt(mu);
}

double carlson_rj(double x, double y, double z, double p) {
  if (x < 0 || y < 0 || z < 0 || p <= 0 || x + y <= 0 || y + z <= 0 ||
      z + x <= 0)
    throw numerical_error("carlson_rj: arguments outside domain");
  constexpr double errtol = 0.0015;
  double xt = x, yt = y, zt = z, pt = p;
  double sum = 0.0, fac = 1.0;
  double mu, dx, dy, dz, dp;
  for (int it = 0; it < 200; ++it) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    const double alpha = pt * (sx + sy + sz) + sx * sy * sz;
    const double beta = pt * (pt + lam) * (pt + lam);
    sum += fac * carlson_rc(alpha * alpha, beta);
    fac *= 0.25;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    pt = 0.25 * (pt + lam);
    mu = 0.2 * (xt + yt + zt + 2.0 * pt);
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    dp = (mu - pt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) <
        errtol)
      break;
  }
  const double ea = dx * (dy + dz) + dy * dz;
  const double eb = dx * dy * dz;
  const double ec = dp * dp;
  const double ed = ea - 3.0 * ec;
  const double ee = eb + 2.0 * dp * (ea - ec);
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 9.0 / 52.0 * ee) +
              eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0)) +
              dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0) - dp * ec / 3.0) /
             (mu * std::sqrt(mu));
}

namespace {

// Pi(n; phi, kappa) restricted to 0 <= phi <= pi/2.
double pi_principal(double n, double phi, double kappa) {
  if (phi == 0.0) return 0.0;
  const double s = std::sin(phi), c = std::cos(phi);
  const double s2 = s * s;
  const double q = 1.0 - kappa * kappa * s2;
  const double np = 1.0 - n * s2;
  if (np <= 1e-14)
    throw numerical_error(
        "elliptic_Pi_incomplete: pole of the integrand on the path");
  double v = s * carlson_rf(c * c, q, 1.0);
  if (n != 0.0) v += n / 3.0 * s2 * s * carlson_rj(c * c, q, 1.0, np);
  return v;
}

}  // namespace

double elliptic_Pi_incomplete(double n, double phi, EllipticModulus kappa) {
  const double k = kappa.value();
  if (k >= 1.0)
    throw numerical_error("elliptic_Pi_incomplete: requires kappa < 1");
  if (phi < 0.0) return -elliptic_Pi_incomplete(n, -phi, kappa);
  // Reduce by half periods: Pi(n; phi + m pi) = Pi(n; phi) + 2 m Pi_complete.
  const double m = std::floor(phi / pi + 0.5);
  const double phir = phi - m * pi;  // in [-pi/2, pi/2]
  if (m > 0 && n >= 1.0 - 1e-14)
    throw numerical_error(
        "elliptic_Pi_incomplete: pole of the integrand on the path");
  double v = 0.0;
  if (m > 0) v += 2.0 * m * pi_principal(n, 0.5 * pi, k);
  v += (phir >= 0) ? pi_principal(n, phir, k) : -pi_principal(n, -phir, k);
  return v;
}

}  // namespace pkepler
