#include "pkepler/pauli.hpp"

#include <algorithm>
#include <cmath>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {
constexpr cplx I{0.0, 1.0};
}

Mat2 Mat2::identity() {
  Mat2 m;
  m.e = {1.0, 0.0, 0.0, 1.0};
  return m;
}

Mat2 Mat2::adjoint() const {
  Mat2 m;
  m.e = {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
  return m;
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 m;
  m.e[0] = a.e[0] * b.e[0] + a.e[1] * b.e[2];
  m.e[1] = a.e[0] * b.e[1] + a.e[1] * b.e[3];
  m.e[2] = a.e[2] * b.e[0] + a.e[3] * b.e[2];
  m.e[3] = a.e[2] * b.e[1] + a.e[3] * b.e[3];
  return m;
}

Mat2 operator*(cplx s, const Mat2& a) {
  Mat2 m;
  for (int i = 0; i < 4; ++i) m.e[i] = s * a.e[i];
  return m;
}

Mat2 inverse(const Mat2& a) {
  const cplx d = a.det();
  if (std::abs(d) < 1e-300)
    throw numerical_error("Mat2 inverse: singular matrix");
  Mat2 m;
  m.e = {a.e[3] / d, -a.e[1] / d, -a.e[2] / d, a.e[0] / d};
  return m;
}

double max_abs(const Mat2& a) {
  double r = 0;
  for (const cplx& v : a.e) r = std::max(r, std::abs(v));
  return r;
}

bool is_unitary(const Mat2& a, double tol) {
  return max_abs(a.adjoint() * a - Mat2::identity()) <= tol;
}

bool is_hermitian(const Mat2& a, double tol) {
  return max_abs(a - a.adjoint()) <= tol;
}

const Mat2& pauli(int mu) {
  static const std::array<Mat2, 4> sigma = [] {
    std::array<Mat2, 4> s;
    s[0].e = {1.0, 0.0, 0.0, 1.0};
    s[1].e = {0.0, 1.0, 1.0, 0.0};
    s[2].e = {0.0, I, -I, 0.0};
    s[3].e = {1.0, 0.0, 0.0, -1.0};
    return s;
  }();
  return sigma[mu];
}

Herm2 pauli_expand(const Mat2& h, double tol) {
  const double dev = max_abs(h - h.adjoint());
  if (!(dev <= tol))
    throw numerical_error("pauli_expand: input not hermitian, |H - H^+| = " +
                          std::to_string(dev));
  Herm2 r;
  r.a0 = 0.5 * std::real(h.e[0] + h.e[3]);
  r.a3 = 0.5 * std::real(h.e[0] - h.e[3]);
  const cplx off = 0.5 * (h.e[1] + std::conj(h.e[2]));
  r.a1 = std::real(off);
  r.a2 = std::imag(off);
  return r;
}

Mat2 herm_to_dense(const Herm2& h) {
  Mat2 m;
  m.e = {cplx(h.a0 + h.a3, 0.0), cplx(h.a1, h.a2), cplx(h.a1, -h.a2),
         cplx(h.a0 - h.a3, 0.0)};
  return m;
}

Spinor operator+(const Spinor& a, const Spinor& b) {
  return {a.c1 + b.c1, a.c2 + b.c2};
}

Spinor operator-(const Spinor& a, const Spinor& b) {
  return {a.c1 - b.c1, a.c2 - b.c2};
}

Spinor operator*(cplx s, const Spinor& a) { return {s * a.c1, s * a.c2}; }

Spinor operator*(const Mat2& m, const Spinor& s) {
  return {m.e[0] * s.c1 + m.e[1] * s.c2, m.e[2] * s.c1 + m.e[3] * s.c2};
}

cplx dot(const Spinor& a, const Spinor& b) {
  return std::conj(a.c1) * b.c1 + std::conj(a.c2) * b.c2;
}

double norm2(const Spinor& a) { return std::norm(a.c1) + std::norm(a.c2); }

Mat2 outer(const Spinor& a, const Spinor& b) {
  Mat2 m;
  m.e = {a.c1 * std::conj(b.c1), a.c1 * std::conj(b.c2),
         a.c2 * std::conj(b.c1), a.c2 * std::conj(b.c2)};
  return m;
}

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

Mat4 Mat4::from_blocks(const Mat2& a, const Mat2& b, const Mat2& c,
                       const Mat2& d) {
  Mat4 m;
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col) {
      m(r, col) = a(r, col);
      m(r, col + 2) = b(r, col);
      m(r + 2, col) = c(r, col);
      m(r + 2, col + 2) = d(r, col);
    }
  return m;
}

Mat2 Mat4::block(int br, int bc) const {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = (*this)(2 * br + r, 2 * bc + c);
  return m;
}

Mat4 Mat4::adjoint() const {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = std::conj((*this)(c, r));
  return m;
}

cplx Mat4::trace() const { return e[0] + e[5] + e[10] + e[15]; }

Mat4 operator+(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx s = 0;
      for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      m(r, c) = s;
    }
  return m;
}

Mat4 operator*(cplx s, const Mat4& a) {
  Mat4 m;
  for (int i = 0; i < 16; ++i) m.e[i] = s * a.e[i];
  return m;
}

double max_abs(const Mat4& a) {
  double r = 0;
  for (const cplx& v : a.e) r = std::max(r, std::abs(v));
  return r;
}

Mat4 inverse(const Mat4& a) {
  // Gauss-Jordan with partial pivoting on [a | I].
  std::array<std::array<cplx, 8>, 4> w{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) w[r][c] = a(r, c);
    w[r][4 + r] = 1.0;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(w[r][col]) > std::abs(w[piv][col])) piv = r;
    if (std::abs(w[piv][col]) < 1e-300)
      throw numerical_error("Mat4 inverse: singular matrix");
    std::swap(w[col], w[piv]);
    const cplx d = w[col][col];
    for (int c = 0; c < 8; ++c) w[col][c] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const cplx f = w[r][col];
      if (f == cplx{}) continue;
      for (int c = 0; c < 8; ++c) w[r][c] -= f * w[col][c];
    }
  }
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = w[r][4 + c];
  return m;
}

Mat4 expm(const Mat4& a) {
  // Scale so the Taylor series converges fast, then square back.
  int squarings = 0;
  double nrm = max_abs(a);
  while (nrm > 0.25 && squarings < 40) {
    nrm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  const Mat4 b = cplx(scale, 0.0) * a;
  Mat4 sum = Mat4::identity();
  Mat4 term = Mat4::identity();
  for (int n = 1; n <= 24; ++n) {
    term = cplx(1.0 / n, 0.0) * (term * b);
    sum = sum + term;
    if (max_abs(term) < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace pkepler
