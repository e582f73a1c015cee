#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pkepler/elliptic.hpp"
#include "pkepler/errors.hpp"
#include "pkepler/ode.hpp"
#include "pkepler/quadrature.hpp"

using namespace pkepler;

namespace {

constexpr double pi = std::numbers::pi;

double F_quad(double phi, double kappa) {
  return quad_adaptive(
      [kappa](double th) {
        const double s = std::sin(th);
        return 1.0 / std::sqrt(1 - kappa * kappa * s * s);
      },
      0, phi, 1e-13);
}

double Pi_quad(double n, double phi, double kappa) {
  return quad_adaptive(
      [n, kappa](double th) {
        const double s2 = std::sin(th) * std::sin(th);
        return 1.0 / ((1 - n * s2) * std::sqrt(1 - kappa * kappa * s2));
      },
      0, phi, 1e-13);
}

}  // namespace

TEST_CASE("EllipticModulus range") {
  CHECK_THROWS_AS(EllipticModulus(-0.1), numerical_error);
  CHECK_THROWS_AS(EllipticModulus(1.1), numerical_error);
  CHECK(EllipticModulus(1.0).value() == 1.0);
}

TEST_CASE("elliptic_K values") {
  CHECK(elliptic_K(EllipticModulus(0.0)) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(std::abs(elliptic_K(EllipticModulus(0.5)) - F_quad(pi / 2, 0.5)) <
        1e-12);
  CHECK(elliptic_K(EllipticModulus(0.3)) < elliptic_K(EllipticModulus(0.6)));
  CHECK_THROWS_AS(elliptic_K(EllipticModulus(1.0)), numerical_error);
}

TEST_CASE("jacobi_am values and roundtrip") {
  CHECK(jacobi_am(1.3, EllipticModulus(0.0)) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(jacobi_am(0.0, EllipticModulus(0.7)) == 0.0);
  // Inverse of the incomplete first-kind integral.
  const double am = jacobi_am(0.8, EllipticModulus(0.6));
  CHECK(std::abs(F_quad(am, 0.6) - 0.8) < 1e-12);
  // Strictly increasing on a sample grid.
  double prev = jacobi_am(-5.0, EllipticModulus(0.8));
  for (double u = -4.5; u <= 5.0; u += 0.5) {
    const double cur = jacobi_am(u, EllipticModulus(0.8));
    CHECK(cur > prev);
    prev = cur;
  }
  // kappa = 1 degeneration: 2 atan(e^u) - pi/2.
  for (double u : {-2.0, -0.3, 0.0, 1.0, 3.0})
    CHECK(std::abs(jacobi_am(u, EllipticModulus(1.0)) -
                   (2 * std::atan(std::exp(u)) - pi / 2)) < 1e-13);
}

TEST_CASE("jacobi_sn_cn_dn values, identities, ODE oracle") {
  CHECK(jacobi_sn_cn_dn(1.0, EllipticModulus(0.0)).sn ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-14));
  CHECK(jacobi_sn_cn_dn(1.0, EllipticModulus(1.0)).sn ==
        doctest::Approx(std::tanh(1.0)).epsilon(1e-14));

  for (double u = -5; u <= 5; u += 0.37)
    for (double k : {0.1, 0.5, 0.9}) {
      const JacobiSCD j = jacobi_sn_cn_dn(u, EllipticModulus(k));
      CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1) < 1e-13);
      CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1) < 1e-13);
    }

  // sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn.
  const double k = 0.6;
  const OdeField f = [k](double, std::span<const double> y,
                         std::span<double> dy) {
    dy[0] = y[1] * y[2];
    dy[1] = -y[0] * y[2];
    dy[2] = -k * k * y[0] * y[1];
  };
  const double y0[] = {0.0, 1.0, 1.0};
  const std::vector<double> grid = {0.8};
  const Trajectory t = integrate_ode(f, y0, 0.0, 0.8, 1e-12, 1e-14, grid);
  const JacobiSCD j = jacobi_sn_cn_dn(0.8, EllipticModulus(k));
  CHECK(std::abs(t.states[0][0] - j.sn) < 1e-10);
  CHECK(std::abs(t.states[0][1] - j.cn) < 1e-10);
  CHECK(std::abs(t.states[0][2] - j.dn) < 1e-10);
}

TEST_CASE("quarter period and periodicity") {
  for (double k : {0.1, 0.5, 0.9}) {
    const EllipticModulus km(k);
    const double K = elliptic_K(km);
    CHECK(std::abs(jacobi_sn_cn_dn(K, km).sn - 1.0) < 1e-12);
    for (double u : {-1.0, 0.3, 2.0})
      CHECK(std::abs(jacobi_sn_cn_dn(u + 4 * K, km).sn -
                     jacobi_sn_cn_dn(u, km).sn) < 1e-11);
  }
}

TEST_CASE("degenerations on a grid over [-5, 5]") {
  for (double u = -5; u <= 5; u += 0.25) {
    CHECK(std::abs(jacobi_sn_cn_dn(u, EllipticModulus(0.0)).sn - std::sin(u)) <
          1e-13);
    CHECK(std::abs(jacobi_sn_cn_dn(u, EllipticModulus(1.0)).sn - std::tanh(u)) <
          1e-13);
  }
}

TEST_CASE("elliptic_Pi_incomplete values") {
  CHECK(elliptic_Pi_incomplete(0.0, 0.7, EllipticModulus(0.0)) ==
        doctest::Approx(0.7).epsilon(1e-13));
  CHECK(elliptic_Pi_incomplete(0.4, 0.0, EllipticModulus(0.5)) == 0.0);
  CHECK(std::abs(elliptic_Pi_incomplete(0.3, 1.0, EllipticModulus(0.5)) -
                 Pi_quad(0.3, 1.0, 0.5)) < 1e-11);
  // Pole on the path.
  CHECK_THROWS_AS(elliptic_Pi_incomplete(1.2, 1.4, EllipticModulus(0.3)),
                  numerical_error);
  CHECK_THROWS_AS(elliptic_Pi_incomplete(0.3, 1.0, EllipticModulus(1.0)),
                  numerical_error);
}

TEST_CASE("elliptic_Pi_incomplete beyond pi/2 and odd symmetry") {
  const EllipticModulus k(0.55);
  for (double phi : {1.9, 3.3, 7.1}) {
    CHECK(std::abs(elliptic_Pi_incomplete(0.35, phi, k) -
                   Pi_quad(0.35, phi, 0.55)) < 1e-10);
    CHECK(std::abs(elliptic_Pi_incomplete(0.35, -phi, k) +
                   elliptic_Pi_incomplete(0.35, phi, k)) < 1e-13);
  }
  // Negative characteristic is pole-free.
  CHECK(std::abs(elliptic_Pi_incomplete(-0.8, 2.4, k) -
                 Pi_quad(-0.8, 2.4, 0.55)) < 1e-10);
}

TEST_CASE("defining-integral oracles on a parameter grid") {
  // am and sn/K against quadrature on a 10 x 10 (u, kappa) grid.
  for (int iu = 0; iu < 10; ++iu) {
    const double u = -2.0 + 4.0 * iu / 9.0;
    for (int ik = 0; ik < 10; ++ik) {
      const double k = 0.05 + 0.9 * ik / 9.0;
      const EllipticModulus km(k);
      const double am = jacobi_am(u, km);
      CHECK(std::abs(F_quad(am, k) - u) < 1e-10);
      const JacobiSCD j = jacobi_sn_cn_dn(u, km);
      CHECK(std::abs(j.sn - std::sin(am)) < 1e-13);
    }
  }
  // Pi on a 10 x 10 (n, kappa) grid at phi = 1.1.
  for (int in = 0; in < 10; ++in) {
    const double n = -0.5 + 1.2 * in / 9.0;
    for (int ik = 0; ik < 10; ++ik) {
      const double k = 0.05 + 0.9 * ik / 9.0;
      CHECK(std::abs(elliptic_Pi_incomplete(n, 1.1, EllipticModulus(k)) -
                     Pi_quad(n, 1.1, k)) < 1e-10);
    }
  }
}
