#pragma once

#include <array>
#include <utility>

#include "pkepler/pauli.hpp"

namespace pkepler {

// Spinor presentation of the twistor metric.  The diagonal metric is
// diag(s0, -s0); the anti-diagonal one is i [[0, -s0], [s0, 0]].  The two are
// related by the fixed unitary cayley_C(): phi_a = C^+ phi_d C.
enum class Rep { diagonal, anti_diagonal };

// Element of C^4 with a representation tag.  In the diagonal representation
// the spinor pair is (eta, xi); in the anti-diagonal one it is (theta, zeta).
struct TwistorVec {
  Spinor upper, lower;
  Rep rep = Rep::diagonal;
};

const Mat4& metric(Rep rep);
const Mat4& cayley_C();

// v^+ phi w with the metric of the common representation.
// Rejects mismatched representation tags.
cplx twistor_inner(const TwistorVec& v, const TwistorVec& w);

// Change of representation: diagonal = C * anti_diagonal.
TwistorVec to_diagonal(const TwistorVec& v);
TwistorVec to_anti_diagonal(const TwistorVec& v);

// Momentum map i v v^+ phi in the block form of the tagged representation.
// Satisfies M^2 = i <v,v> M.
Mat4 momentum_map(const TwistorVec& v);

// Momentum map of the U(2,2) action on the cotangent bundle T*U(2),
// I_d(Z, rho) = i [[Z rho Z^+, -Z rho], [(Z rho)^+, -rho]].
// Z must be unitary within `tol`.
Mat4 moment_map_classical_d(const Mat2& Z, const Herm2& rho,
                            double tol = 1e-12);

// Momentum map of the U_a(2,2) action on H(2) x H(2),
// I_a(Y, X) = [[-YX, YXY], [-X, XY]].
Mat4 moment_map_classical_a(const Herm2& Y, const Herm2& X);

// Cotangent lift of the Cayley transformation:
// Z = (Y - i s0)(-i Y + s0)^-1,  rho = (-i Y + s0) X (-i Y + s0)^+ / 2.
// Preserves det X = 0 and Tr X >= 0.
struct CotangentPoint {
  Mat2 Z;
  Herm2 rho;
};
CotangentPoint cayley_cotangent(const Herm2& Y, const Herm2& X);

// Inverse Cayley map Y = (Z + i s0)(i Z + s0)^-1; defined only away from
// det(i Z + s0) = 0 (rejects within 1e-12 of that boundary).
Herm2 cayley_inverse(const Mat2& Z);

// Components I_mu = eta^+ sigma_mu eta / 2 and J_nu = xi^+ sigma_nu xi / 2.
// Both quadruples satisfy the rank-one identity a0^2 = a1^2 + a2^2 + a3^2.
struct IJComponents {
  std::array<double, 4> I{}, J{};
};
IJComponents iju_components(const Spinor& eta, const Spinor& xi);

// Group membership through the defining relations, e.g. for the diagonal
// representation A^+A = s0 + C^+C, D^+D = s0 + B^+B, D^+C = B^+A.
bool in_group(Rep rep, const Mat4& g, double tol = 1e-10);

// Adjoint action g m g^-1.
Mat4 ad(const Mat4& g, const Mat4& m);

// Linear action of U(2,2) on twistors.  Rejects g outside the group of the
// twistor's representation.
TwistorVec group_action(const Mat4& g, const TwistorVec& v);

// Fractional-linear cotangent action of U_d(2,2):
// (Z, rho) -> ((AZ+B)(CZ+D)^-1, (CZ+D) rho (CZ+D)^+).
CotangentPoint group_action(const Mat4& g, const CotangentPoint& p);

// Fractional-linear action of U_a(2,2) on H(2) x H(2); defined only for
// det(C Y + D) != 0, rejected otherwise.
std::pair<Herm2, Herm2> group_action(const Mat4& g, const Herm2& Y,
                                     const Herm2& X);

}  // namespace pkepler
