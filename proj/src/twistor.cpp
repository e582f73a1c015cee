#include "pkepler/twistor.hpp"

#include <cmath>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

constexpr cplx I{0.0, 1.0};

Mat2 herm(const Herm2& h) { return herm_to_dense(h); }

}  // namespace

const Mat4& metric(Rep rep) {
  static const Mat4 phi_d = [] {
    Mat2 s0 = Mat2::identity();
    return Mat4::from_blocks(s0, Mat2::zero(), Mat2::zero(), cplx(-1.0) * s0);
  }();
  static const Mat4 phi_a = [] {
    Mat2 s0 = Mat2::identity();
    return Mat4::from_blocks(Mat2::zero(), -I * s0, I * s0, Mat2::zero());
  }();
  return rep == Rep::diagonal ? phi_d : phi_a;
}

const Mat4& cayley_C() {
  static const Mat4 C = [] {
    const cplx w = 1.0 / std::sqrt(2.0);
    Mat2 s0 = Mat2::identity();
    return Mat4::from_blocks(w * s0, -I * w * s0, -I * w * s0, w * s0);
  }();
  return C;
}

cplx twistor_inner(const TwistorVec& v, const TwistorVec& w) {
  if (v.rep != w.rep)
    throw numerical_error("twistor_inner: mismatched representation tags");
  if (v.rep == Rep::diagonal)
    return dot(v.upper, w.upper) - dot(v.lower, w.lower);
  // i (-theta^+ zeta + zeta^+ theta)
  return I * (dot(v.lower, w.upper) - dot(v.upper, w.lower));
}

TwistorVec to_diagonal(const TwistorVec& v) {
  if (v.rep == Rep::diagonal) return v;
  const cplx w = 1.0 / std::sqrt(2.0);
  TwistorVec r;
  r.rep = Rep::diagonal;
  r.upper = w * (v.upper - I * v.lower);
  r.lower = w * (cplx(-1.0) * I * v.upper + v.lower);
  return r;
}

TwistorVec to_anti_diagonal(const TwistorVec& v) {
  if (v.rep == Rep::anti_diagonal) return v;
  const cplx w = 1.0 / std::sqrt(2.0);
  TwistorVec r;
  r.rep = Rep::anti_diagonal;
  r.upper = w * (v.upper + I * v.lower);
  r.lower = w * (I * v.upper + v.lower);
  return r;
}

Mat4 momentum_map(const TwistorVec& v) {
  if (v.rep == Rep::diagonal) {
    const Spinor &eta = v.upper, &xi = v.lower;
    return Mat4::from_blocks(I * outer(eta, eta), -I * outer(eta, xi),
                             I * outer(xi, eta), -I * outer(xi, xi));
  }
  const Spinor &th = v.upper, &ze = v.lower;
  return Mat4::from_blocks(cplx(-1.0) * outer(th, ze), outer(th, th),
                           cplx(-1.0) * outer(ze, ze), outer(ze, th));
}

Mat4 moment_map_classical_d(const Mat2& Z, const Herm2& rho, double tol) {
  if (!is_unitary(Z, tol))
    throw numerical_error("moment_map_classical: Z is not unitary");
  const Mat2 r = herm(rho);
  const Mat2 Zr = Z * r;
  return Mat4::from_blocks(I * (Zr * Z.adjoint()), -I * Zr,
                           I * Zr.adjoint(), -I * r);
}

Mat4 moment_map_classical_a(const Herm2& Y, const Herm2& X) {
  const Mat2 y = herm(Y), x = herm(X);
  return Mat4::from_blocks(cplx(-1.0) * (y * x), y * x * y,
                           cplx(-1.0) * x, x * y);
}

CotangentPoint cayley_cotangent(const Herm2& Y, const Herm2& X) {
  const Mat2 y = herm(Y), x = herm(X);
  const Mat2 s0 = Mat2::identity();
  const Mat2 m = cplx(-1.0) * I * y + s0;  // -iY + s0
  if (std::abs(m.det()) < 1e-14)
    throw numerical_error("cayley_cotangent: det(-iY + s0) vanishes");
  CotangentPoint p;
  p.Z = (y - I * s0) * inverse(m);
  p.rho = pauli_expand(cplx(0.5) * (m * x * m.adjoint()), 1e-10);
  return p;
}

Herm2 cayley_inverse(const Mat2& Z) {
  const Mat2 s0 = Mat2::identity();
  const Mat2 m = I * Z + s0;
  if (std::abs(m.det()) < 1e-12)
    throw numerical_error(
        "cayley_inverse: det(iZ + s0) vanishes (Cayley domain boundary)");
  return pauli_expand((Z + I * s0) * inverse(m), 1e-10);
}

IJComponents iju_components(const Spinor& eta, const Spinor& xi) {
  IJComponents r;
  for (int mu = 0; mu < 4; ++mu) {
    r.I[mu] = 0.5 * std::real(dot(eta, pauli(mu) * eta));
    r.J[mu] = 0.5 * std::real(dot(xi, pauli(mu) * xi));
  }
  return r;
}

bool in_group(Rep rep, const Mat4& g, double tol) {
  const Mat2 A = g.block(0, 0), B = g.block(0, 1), C = g.block(1, 0),
             D = g.block(1, 1);
  const Mat2 s0 = Mat2::identity();
  if (rep == Rep::diagonal) {
    return max_abs(A.adjoint() * A - (s0 + C.adjoint() * C)) <= tol &&
           max_abs(D.adjoint() * D - (s0 + B.adjoint() * B)) <= tol &&
           max_abs(D.adjoint() * C - B.adjoint() * A) <= tol;
  }
  return max_abs(A.adjoint() * C - C.adjoint() * A) <= tol &&
         max_abs(D.adjoint() * B - B.adjoint() * D) <= tol &&
         max_abs(A.adjoint() * D - (s0 + C.adjoint() * B)) <= tol;
}

Mat4 ad(const Mat4& g, const Mat4& m) { return g * m * inverse(g); }

TwistorVec group_action(const Mat4& g, const TwistorVec& v) {
  if (!in_group(v.rep, g))
    throw numerical_error("group_action: g violates the U(2,2) relations");
  const Mat2 A = g.block(0, 0), B = g.block(0, 1), C = g.block(1, 0),
             D = g.block(1, 1);
  TwistorVec r;
  r.rep = v.rep;
  r.upper = A * v.upper + B * v.lower;
  r.lower = C * v.upper + D * v.lower;
  return r;
}

CotangentPoint group_action(const Mat4& g, const CotangentPoint& p) {
  if (!in_group(Rep::diagonal, g))
    throw numerical_error("group_action: g violates the U_d(2,2) relations");
  const Mat2 A = g.block(0, 0), B = g.block(0, 1), C = g.block(1, 0),
             D = g.block(1, 1);
  const Mat2 czd = C * p.Z + D;
  if (std::abs(czd.det()) < 1e-12)
    throw numerical_error("group_action: det(CZ + D) vanishes");
  CotangentPoint r;
  r.Z = (A * p.Z + B) * inverse(czd);
  r.rho = pauli_expand(czd * herm(p.rho) * czd.adjoint(), 1e-9);
  return r;
}

std::pair<Herm2, Herm2> group_action(const Mat4& g, const Herm2& Y,
                                     const Herm2& X) {
  if (!in_group(Rep::anti_diagonal, g))
    throw numerical_error("group_action: g violates the U_a(2,2) relations");
  const Mat2 A = g.block(0, 0), B = g.block(0, 1), C = g.block(1, 0),
             D = g.block(1, 1);
  const Mat2 y = herm(Y), x = herm(X);
  const Mat2 cyd = C * y + D;
  if (std::abs(cyd.det()) < 1e-12)
    throw numerical_error("group_action: det(CY + D) vanishes");
  const Herm2 Yp = pauli_expand((A * y + B) * inverse(cyd), 1e-9);
  const Herm2 Xp = pauli_expand(cyd * x * cyd.adjoint(), 1e-9);
  return {Yp, Xp};
}

}  // namespace pkepler
