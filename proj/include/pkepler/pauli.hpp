#pragma once

#include <array>
#include <complex>

namespace pkepler {

using cplx = std::complex<double>;

// Dense complex 2x2 matrix, row major.
struct Mat2 {
  std::array<cplx, 4> e{};

  cplx& operator()(int r, int c) { return e[2 * r + c]; }
  const cplx& operator()(int r, int c) const { return e[2 * r + c]; }

  static Mat2 zero() { return {}; }
  static Mat2 identity();

  Mat2 adjoint() const;
  cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
  cplx trace() const { return e[0] + e[3]; }
};

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);
Mat2 inverse(const Mat2& a);  // throws numerical_error on |det| < 1e-300
double max_abs(const Mat2& a);
bool is_unitary(const Mat2& a, double tol);
bool is_hermitian(const Mat2& a, double tol);

// Pauli basis sigma_0..sigma_3.  The sign convention for sigma_2 is
// [[0, i], [-i, 0]], so that a hermitian H = a0 s0 + a1 s1 + a2 s2 + a3 s3
// has upper off-diagonal entry a1 + i a2.
const Mat2& pauli(int mu);

// A hermitian 2x2 matrix stored by its four real Pauli coefficients.
// det = a0^2 - a1^2 - a2^2 - a3^2, trace = 2 a0.
struct Herm2 {
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;

  double det() const { return a0 * a0 - a1 * a1 - a2 * a2 - a3 * a3; }
  double trace() const { return 2 * a0; }
};

// Pauli expansion of a dense matrix.  Rejects input that deviates from
// hermiticity by more than `tol` (max entrywise |H - H^+|).
Herm2 pauli_expand(const Mat2& h, double tol = 1e-12);
Mat2 herm_to_dense(const Herm2& h);

// A pair of complex components; the building block of twistors.
struct Spinor {
  cplx c1{}, c2{};
};

Spinor operator+(const Spinor& a, const Spinor& b);
Spinor operator-(const Spinor& a, const Spinor& b);
Spinor operator*(cplx s, const Spinor& a);
Spinor operator*(const Mat2& m, const Spinor& s);
cplx dot(const Spinor& a, const Spinor& b);  // a^+ b
double norm2(const Spinor& a);               // a^+ a
Mat2 outer(const Spinor& a, const Spinor& b);  // a b^+

// Dense complex 4x4 matrix, row major.
struct Mat4 {
  std::array<cplx, 16> e{};

  cplx& operator()(int r, int c) { return e[4 * r + c]; }
  const cplx& operator()(int r, int c) const { return e[4 * r + c]; }

  static Mat4 zero() { return {}; }
  static Mat4 identity();
  static Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c,
                          const Mat2& d);

  Mat2 block(int br, int bc) const;
  Mat4 adjoint() const;
  cplx trace() const;
};

Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(cplx s, const Mat4& a);
double max_abs(const Mat4& a);
Mat4 inverse(const Mat4& a);  // Gaussian elimination with partial pivoting
Mat4 expm(const Mat4& a);     // scaling and squaring, Taylor core

}  // namespace pkepler
