#include "pkepler/poisson.hpp"

#include <cmath>

#include "pkepler/errors.hpp"

namespace pkepler {

namespace {

cplx& coord(TwistorVec& v, int j) {
  switch (j) {
    case 0: return v.upper.c1;
    case 1: return v.upper.c2;
    case 2: return v.lower.c1;
    default: return v.lower.c2;
  }
}

double eval_checked(const TwistorFn& f, const TwistorVec& v) {
  const double r = f(v);
  if (!std::isfinite(r))
    throw numerical_error(
        "poisson_bracket_numeric: non-finite function value while stenciling");
  return r;
}

// Wirtinger derivative df/dz_j = (df/dx - i df/dy) / 2 by central differences.
cplx wirtinger(const TwistorFn& f, const TwistorVec& at, int j) {
  TwistorVec v = at;
  const double h = 1e-6 * std::max(1.0, std::abs(coord(v, j)));
  const cplx z0 = coord(v, j);
  coord(v, j) = z0 + h;
  const double fxp = eval_checked(f, v);
  coord(v, j) = z0 - h;
  const double fxm = eval_checked(f, v);
  coord(v, j) = z0 + cplx(0.0, h);
  const double fyp = eval_checked(f, v);
  coord(v, j) = z0 - cplx(0.0, h);
  const double fym = eval_checked(f, v);
  const double dx = (fxp - fxm) / (2 * h);
  const double dy = (fyp - fym) / (2 * h);
  return 0.5 * cplx(dx, -dy);
}

}  // namespace

double poisson_bracket_numeric(const TwistorFn& f, const TwistorFn& g,
                               const TwistorVec& at) {
  if (at.rep != Rep::diagonal)
    throw numerical_error(
        "poisson_bracket_numeric: requires the diagonal representation");
  // For real f the bracket reduces to
  //   -2 sum_eta Im(conj(df/dz) dg/dz) + 2 sum_xi Im(conj(df/dz) dg/dz).
  double acc = 0;
  for (int j = 0; j < 4; ++j) {
    const cplx df = wirtinger(f, at, j);
    const cplx dg = wirtinger(g, at, j);
    const double term = 2.0 * std::imag(std::conj(df) * dg);
    acc += (j < 2) ? -term : term;
  }
  return acc;
}

}  // namespace pkepler
