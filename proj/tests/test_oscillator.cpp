#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pkepler/elliptic.hpp"
#include "pkepler/errors.hpp"
#include "pkepler/oscillator.hpp"
#include "support/testutil.hpp"

using namespace pkepler;

namespace {

constexpr double pi = std::numbers::pi;

OscillatorParams sec5_params(int l, double G0 = 0.1) {
  OscillatorParams p;
  p.k = 1;
  p.l = l;
  p.h0 = smooth_sum();
  p.g0 = smooth_constant(G0);
  return p;
}

ComplexState unit_state(cplx e1, cplx e2, cplx x1, cplx x2) {
  return {{e1, e2}, {x1, x2}};
}

OscillatorParams random_params(testutil::Rng& rng) {
  OscillatorParams p;
  do {
    p.k = static_cast<int>(std::floor(testutil::uniform(rng, -2.0, 3.0)));
    p.l = static_cast<int>(std::floor(testutil::uniform(rng, -2.0, 3.0)));
  } while (p.k == 0 && p.l == 0);
  std::array<double, 4> hc, gc;
  for (auto& v : hc) v = testutil::uniform(rng, -1.0, 1.0);
  for (auto& v : gc) v = testutil::uniform(rng, -0.2, 0.2);
  p.h0 = smooth_affine(testutil::uniform(rng, -1.0, 1.0), hc);
  p.g0 = smooth_affine(testutil::uniform(rng, -0.2, 0.2), gc);
  return p;
}

}  // namespace

TEST_CASE("hamiltonian_full worked values") {
  OscillatorParams free = sec5_params(1, 0.0);
  free.g0 = smooth_constant(0.0);
  CHECK(hamiltonian_full(unit_state(1, 0, 1, 0), free) == doctest::Approx(2.0));

  CHECK(hamiltonian_full(unit_state(1, 1, 1, 1), sec5_params(1)) ==
        doctest::Approx(4.2).epsilon(1e-14));
  CHECK(hamiltonian_full(unit_state(1, 1, 1, 1), sec5_params(-1)) ==
        doctest::Approx(4.2).epsilon(1e-14));
}

TEST_CASE("to_canonical worked values") {
  const OscillatorParams p = sec5_params(1);
  // eta = (1, d), xi = (1, d) just inside the chart (the phases of exact
  // zeros are undefined and rejected; see the boundary case below).
  const double d = 1e-6;
  const CanonicalState c = to_canonical(unit_state(1, d, 1, d), p);
  CHECK(c.I0 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(c.J0 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(c.I3p == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c.J3p == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(c.phi0 == doctest::Approx(0.0));
  CHECK(c.psi0 == doctest::Approx(0.0));
  CHECK(c.phi3p == doctest::Approx(0.0));
  CHECK(c.psi3p == doctest::Approx(0.0));

  const CanonicalState c2 = to_canonical(unit_state(1, 1, 1, 1), p);
  CHECK(c2.I0 == doctest::Approx(1.0));
  CHECK(c2.J0 == doctest::Approx(1.0));
  CHECK(c2.I3p == doctest::Approx(0.0));
  CHECK(c2.J3p == doctest::Approx(0.0));

  CHECK_THROWS_AS(to_canonical(unit_state(1, 0, 0, 1), p), numerical_error);
}

TEST_CASE("from_canonical worked values and boundary") {
  const OscillatorParams p = sec5_params(1);
  const ComplexState s = from_canonical({0.5, 0.5, 0.0, 0.5, 0, 0, 0, 0}, p);
  CHECK(std::abs(s.eta.c1 - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(s.eta.c2) < 1e-14);
  CHECK(std::abs(s.xi.c1 - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(s.xi.c2) < 1e-14);

  // Boundary: one modulus vanishes exactly; reconstruction succeeds and the
  // chart change back is rejected.
  const CanonicalState b{1.0, 1.0, 0.6, 0.4, 0.1, 0.2, 0.3, 0.4};
  const ComplexState sb = from_canonical(b, p);  // I3 = 1.0 = I0
  CHECK(std::abs(sb.eta.c2) == 0.0);
  CHECK_THROWS_AS(to_canonical(sb, p), numerical_error);

  CHECK_THROWS_AS(from_canonical({1.0, 1.0, 1.2, 0.0, 0, 0, 0, 0}, p),
                  numerical_error);
  CHECK_THROWS_AS(from_canonical({-1.0, 1.0, 0.0, 0.0, 0, 0, 0, 0}, p),
                  numerical_error);
}

TEST_CASE("chart roundtrips at random states") {
  testutil::Rng rng(301);
  for (int i = 0; i < 100; ++i) {
    const OscillatorParams p = random_params(rng);
    const ComplexState s = testutil::random_complex_state(rng);
    const CanonicalState c = to_canonical(s, p);
    const ComplexState back = from_canonical(c, p);
    CHECK(std::abs(back.eta.c1 - s.eta.c1) < 1e-12);
    CHECK(std::abs(back.eta.c2 - s.eta.c2) < 1e-12);
    CHECK(std::abs(back.xi.c1 - s.xi.c1) < 1e-12);
    CHECK(std::abs(back.xi.c2 - s.xi.c2) < 1e-12);
  }
  // to_canonical(from_canonical(c)) = c for principal-branch angles.
  for (int i = 0; i < 100; ++i) {
    const OscillatorParams p = random_params(rng);
    const double kl2 = p.k * p.k + p.l * p.l;
    const double I0 = testutil::uniform(rng, 0.3, 2.0);
    const double J0 = testutil::uniform(rng, 0.3, 2.0);
    const double I3 = testutil::uniform(rng, -0.9, 0.9) * I0;
    const double J3 = testutil::uniform(rng, -0.9, 0.9) * J0;
    const double u1 = testutil::uniform(rng, -pi * 0.99, pi * 0.99);
    const double u2 = testutil::uniform(rng, -pi * 0.99, pi * 0.99);
    const double v1 = testutil::uniform(rng, -pi * 0.99, pi * 0.99);
    const double v2 = testutil::uniform(rng, -pi * 0.99, pi * 0.99);
    CanonicalState c;
    c.I0 = I0;
    c.J0 = J0;
    c.I3p = (p.k * I3 - p.l * J3) / kl2;
    c.J3p = (p.l * I3 + p.k * J3) / kl2;
    c.phi0 = u1 + u2;
    c.psi0 = -(v1 + v2);
    const double phi3 = u1 - u2, psi3 = v2 - v1;
    c.phi3p = p.k * phi3 - p.l * psi3;
    c.psi3p = p.l * phi3 + p.k * psi3;
    const CanonicalState back = to_canonical(from_canonical(c, p), p);
    CHECK(std::abs(back.I0 - c.I0) < 1e-12);
    CHECK(std::abs(back.J0 - c.J0) < 1e-12);
    CHECK(std::abs(back.I3p - c.I3p) < 1e-12);
    CHECK(std::abs(back.J3p - c.J3p) < 1e-12);
    CHECK(std::abs(back.phi0 - c.phi0) < 1e-11);
    CHECK(std::abs(back.psi0 - c.psi0) < 1e-11);
    CHECK(std::abs(back.phi3p - c.phi3p) < 1e-11);
    CHECK(std::abs(back.psi3p - c.psi3p) < 1e-11);
  }
}

TEST_CASE("reduced_hamiltonian worked values") {
  const OscillatorParams p = sec5_params(1);
  CHECK(reduced_hamiltonian({1, 1, 0, 0, 0, 0, 0, 0}, p) ==
        doctest::Approx(4.2).epsilon(1e-14));
  CHECK(reduced_hamiltonian({1, 1, 0, 0, 0, 0, pi / 2, 0}, p) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("chart consistency of the reduced Hamiltonian") {
  testutil::Rng rng(302);
  for (int i = 0; i < 300; ++i) {
    const OscillatorParams p = random_params(rng);
    const ComplexState s = testutil::random_complex_state(rng);
    const double full = hamiltonian_full(s, p);
    const double red = reduced_hamiltonian(to_canonical(s, p), p);
    CHECK(std::abs(full - red) < 1e-10 * std::max(1.0, std::abs(full)));
  }
}

TEST_CASE("integrate_complex: free flow is a phase rotation") {
  OscillatorParams p = sec5_params(1, 0.0);
  const ComplexState s0 = unit_state(cplx(0.6, 0.2), cplx(-0.3, 0.4),
                                     cplx(0.1, -0.9), cplx(0.5, 0.5));
  const std::vector<double> grid = {pi / 2};
  const Trajectory t = integrate_complex(s0, p, 0.0, pi / 2, 1e-12, 1e-14, grid);
  const ComplexState s = complex_state_from(t.states.back());
  const cplx rot = std::exp(cplx(0, pi / 2));
  CHECK(std::abs(s.eta.c1 - rot * s0.eta.c1) < 1e-9);
  CHECK(std::abs(s.eta.c2 - rot * s0.eta.c2) < 1e-9);
  CHECK(std::abs(s.xi.c1 - s0.xi.c1 / rot) < 1e-9);
  CHECK(std::abs(s.xi.c2 - s0.xi.c2 / rot) < 1e-9);
}

TEST_CASE("integrate_complex: separatrix tanh law and conservation") {
  const OscillatorParams p = sec5_params(1);
  const ComplexState s0 = from_canonical({1, 1, 0, 0, 0, 0, pi / 2, 0}, p);
  const std::vector<double> grid = {1.0, 5.0, 10.0, 20.0};
  const Trajectory t = integrate_complex(s0, p, 0.0, 20.0, 1e-10, 1e-12, grid);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const ComplexState s = complex_state_from(t.states[i]);
    const IJComponents ij = iju_components(s.eta, s.xi);
    const double i3p = 0.5 * (ij.I[3] - ij.J[3]);
    CHECK(std::abs(i3p - std::tanh(0.2 * grid[i])) < 1e-8);
  }
  for (const char* key : {"H", "I0", "J0", "J3p"}) {
    const auto& col = t.meta.at(key);
    for (double v : col) CHECK(std::abs(v - col.front()) < 1e-8);
  }
}

TEST_CASE("integrate_complex: I0 - J0 and rank-one identities hold along flow") {
  testutil::Rng rng(303);
  const OscillatorParams p = random_params(rng);
  ComplexState s0 = testutil::random_complex_state(rng);
  // Unit-scale data: oscillation rates stay O(1).
  const cplx se{1.0 / std::sqrt(norm2(s0.eta)), 0.0};
  const cplx sx{1.0 / std::sqrt(norm2(s0.xi)), 0.0};
  s0.eta = se * s0.eta;
  s0.xi = sx * s0.xi;
  const std::vector<double> grid = linspace(0.0, 10.0, 64);
  const Trajectory t = integrate_complex(s0, p, 0.0, 10.0, 1e-12, 1e-14, grid);
  const IJComponents ij0 = iju_components(s0.eta, s0.xi);
  for (const auto& y : t.states) {
    const ComplexState s = complex_state_from(y);
    const IJComponents ij = iju_components(s.eta, s.xi);
    CHECK(std::abs((ij.I[0] - ij.J[0]) - (ij0.I[0] - ij0.J[0])) < 1e-10);
    const double ri = ij.I[0] * ij.I[0] - ij.I[1] * ij.I[1] -
                      ij.I[2] * ij.I[2] - ij.I[3] * ij.I[3];
    CHECK(std::abs(ri) < 1e-10 * std::max(1.0, ij.I[0] * ij.I[0]));
  }
}

TEST_CASE("Lie-Poisson form of the I_k equations along a trajectory") {
  // d I_k / dt = -eps_klm I_l dH~/dI_m with H~ the (I, J) expression.
  const OscillatorParams p = sec5_params(1);
  const ComplexState s0 =
      from_canonical({1.0, 1.0, 0.1, -0.05, 0.3, -0.2, pi / 3, 0.7}, p);
  const double dt = 1e-4;
  const std::vector<double> grid = {1.0 - dt, 1.0, 1.0 + dt,
                                    2.5 - dt, 2.5, 2.5 + dt};
  const Trajectory t = integrate_complex(s0, p, 0.0, 3.0, 1e-12, 1e-14, grid);
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  for (std::size_t base : {std::size_t{0}, std::size_t{3}}) {
    std::array<IJComponents, 3> ij;
    for (std::size_t j = 0; j < 3; ++j) {
      const ComplexState s = complex_state_from(t.states[base + j]);
      ij[j] = iju_components(s.eta, s.xi);
    }
    const auto dH = [&](int which, std::size_t m) {
      const double h = 1e-6;
      IJComponents up = ij[1], dn = ij[1];
      auto& cu = which == 0 ? up.I : up.J;
      auto& cd = which == 0 ? dn.I : dn.J;
      cu[m] += h;
      cd[m] -= h;
      return (hamiltonian_r(up.I, up.J, p) - hamiltonian_r(dn.I, dn.J, p)) /
             (2 * h);
    };
    for (std::size_t k = 1; k <= 3; ++k) {
      const double lhs_i = (ij[2].I[k] - ij[0].I[k]) / (2 * dt);
      const double lhs_j = (ij[2].J[k] - ij[0].J[k]) / (2 * dt);
      double rhs_i = 0, rhs_j = 0;
      // The J bracket carries the opposite orientation, {J_k, J_l} =
      // +eps_klm J_m, so its equations of motion flip sign relative to I.
      for (std::size_t l = 1; l <= 3; ++l)
        for (std::size_t m = 1; m <= 3; ++m) {
          rhs_i -= eps[k - 1][l - 1][m - 1] * ij[1].I[l] * dH(0, m);
          rhs_j += eps[k - 1][l - 1][m - 1] * ij[1].J[l] * dH(1, m);
        }
      CHECK(std::abs(lhs_i - rhs_i) < 1e-5);
      CHECK(std::abs(lhs_j - rhs_j) < 1e-5);
    }
  }
}

TEST_CASE("integrate_reduced: exact constants and separatrix law") {
  const OscillatorParams p = sec5_params(1);
  const CanonicalState c0{1, 1, 0, 0, 0, 0, pi / 2, 0};
  const std::vector<double> grid = {1.0, 5.0, 10.0};
  const Trajectory t = integrate_reduced(c0, p, 0.0, 10.0, 1e-11, 1e-13, grid);
  for (const auto& y : t.states) {
    CHECK(y[0] == 1.0);  // the I0, J0, J3' rates are exact zeros
    CHECK(y[1] == 1.0);
    CHECK(y[3] == 0.0);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(t.states[i][2] - std::tanh(0.2 * grid[i])) < 1e-8);
    CHECK(std::abs(t.states[i][6] - pi / 2) < 1e-9);  // phi3' frozen
  }
}

TEST_CASE("integrate_reduced agrees with the pushed-forward complex flow") {
  const OscillatorParams p = sec5_params(-1);
  const CanonicalState c0{1.0, 1.2, 0.05, -0.1, 0.2, -0.4, pi / 3, 0.6};
  const std::vector<double> grid = linspace(0.0, 8.0, 33);
  const Trajectory tr = integrate_reduced(c0, p, 0.0, 8.0, 1e-11, 1e-13, grid);
  const Trajectory tc = integrate_complex(from_canonical(c0, p), p, 0.0, 8.0,
                                          1e-11, 1e-13, grid);
  CanonicalState prev = c0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CanonicalState c =
        to_canonical(complex_state_from(tc.states[i]), p, prev);
    prev = c;
    const auto& y = tr.states[i];
    CHECK(std::abs(c.I0 - y[0]) < 1e-7);
    CHECK(std::abs(c.J0 - y[1]) < 1e-7);
    CHECK(std::abs(c.I3p - y[2]) < 1e-7);
    CHECK(std::abs(c.J3p - y[3]) < 1e-7);
    CHECK(std::abs(c.phi0 - y[4]) < 1e-7);
    CHECK(std::abs(c.psi0 - y[5]) < 1e-7);
    CHECK(std::abs(c.phi3p - y[6]) < 1e-7);
    CHECK(std::abs(c.psi3p - y[7]) < 1e-7);
  }
}

TEST_CASE("integrate_reduced rejects chart-boundary contact") {
  // Pure coupling drives I3' into the box wall.
  OscillatorParams p = sec5_params(1, 1.0);
  p.h0 = smooth_constant(0.0);
  const CanonicalState c0{1, 1, 0, 0, 0, 0, pi / 2, 0};
  const std::vector<double> grid = {40.0};
  CHECK_THROWS_AS(integrate_reduced(c0, p, 0.0, 40.0, 1e-10, 1e-12, grid),
                  numerical_error);
}

TEST_CASE("solve_I3_quadrature: worked example half-period and values") {
  const OscillatorParams p = sec5_params(1);
  const QuadratureConstants consts{1.0, 1.0, 0.0, 4.1};
  const double phi3p0 = std::acos(0.5);
  const std::vector<double> grid = linspace(0.0, 10.0, 41);
  const I3Quadrature q = solve_I3_quadrature(consts, p, 0.0, phi3p0, grid);

  const double lm = std::sqrt(0.5), lp = std::sqrt(1.5);
  const double om = 0.2 * lp, kap = lm / lp;
  CHECK(std::abs(q.turning_hi - lm) < 1e-10);
  CHECK(std::abs(q.turning_lo + lm) < 1e-10);
  CHECK(std::abs(q.half_period - 2 * elliptic_K(EllipticModulus(kap)) / om) <
        1e-8);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ref =
        lm * jacobi_sn_cn_dn(om * grid[i], EllipticModulus(kap)).sn;
    CHECK(std::abs(q.values[i] - ref) < 1e-8);
  }

  // Cross-check against the reduced integrator.
  const CanonicalState c0{1, 1, 0, 0, 0, 0, phi3p0, 0};
  const Trajectory tr = integrate_reduced(c0, p, 0.0, 10.0, 1e-12, 1e-14, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(q.values[i] - tr.states[i][2]) < 1e-7);
}

TEST_CASE("solve_I3_quadrature: frozen and rejected cases") {
  // G0~' = 0 with matching energy: constant solution.
  OscillatorParams pz = sec5_params(1, 0.0);
  const QuadratureConstants flat{1.0, 1.0, 0.0, 4.0};
  const std::vector<double> grid = {0.0, 1.0, 2.0};
  const I3Quadrature q = solve_I3_quadrature(flat, pz, 0.25, pi / 2, grid);
  CHECK(q.constant);
  for (double v : q.values) CHECK(v == 0.25);

  // Inconsistent constants: negative radicand.
  const QuadratureConstants bad{1.0, 1.0, 0.0, 5.0};
  CHECK_THROWS_AS(solve_I3_quadrature(bad, sec5_params(1), 0.0, pi / 2, grid),
                  numerical_error);

  // Separatrix: double turning point at the box edge.
  const QuadratureConstants sep{1.0, 1.0, 0.0, 4.0};
  CHECK_THROWS_AS(solve_I3_quadrature(sep, sec5_params(1), 0.0, pi / 2, grid),
                  separatrix_error);

  // Undetermined initial branch.
  const QuadratureConstants gen{1.0, 1.0, 0.0, 4.1};
  CHECK_THROWS_AS(solve_I3_quadrature(gen, sec5_params(1), 0.0, 0.0, grid),
                  numerical_error);
}

TEST_CASE("solve_angles_quadrature: separatrix case and generic cross-check") {
  const OscillatorParams p = sec5_params(1);

  // H~' = 4 I0: dphi0/dt = 2 and psi3' is constant.
  {
    const QuadratureConstants consts{1.0, 1.0, 0.0, 4.0};
    const std::vector<double> grid = linspace(0.0, 6.0, 61);
    std::vector<double> i3(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      i3[i] = std::tanh(0.2 * grid[i]);
    const AngleQuadrature a =
        solve_angles_quadrature(consts, p, i3, grid, {0.1, 0.2, pi / 2, 0.3});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(a.phi0[i] - (0.1 + 2 * grid[i])) < 1e-8);
      CHECK(std::abs(a.psi3p[i] - 0.3) < 1e-9);
    }
  }

  // Generic case agrees with the reduced integrator.
  {
    const QuadratureConstants consts{1.0, 1.0, 0.0, 4.1};
    const double phi3p0 = std::acos(0.5);
    const std::vector<double> grid = linspace(0.0, 10.0, 201);
    const I3Quadrature q = solve_I3_quadrature(consts, p, 0.0, phi3p0, grid);
    const AngleQuadrature a = solve_angles_quadrature(
        consts, p, q.values, grid, {0.0, 0.0, phi3p0, 0.0});
    const CanonicalState c0{1, 1, 0, 0, 0, 0, phi3p0, 0};
    const Trajectory tr =
        integrate_reduced(c0, p, 0.0, 10.0, 1e-12, 1e-14, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(a.phi0[i] - tr.states[i][4]) < 1e-6);
      CHECK(std::abs(a.psi0[i] - tr.states[i][5]) < 1e-6);
      CHECK(std::abs(a.phi3p[i] - tr.states[i][6]) < 1e-6);
      CHECK(std::abs(a.psi3p[i] - tr.states[i][7]) < 1e-6);
    }
  }

  // Vanishing G0~' on the path is rejected.
  {
    OscillatorParams pz = sec5_params(1, 0.0);
    const QuadratureConstants consts{1.0, 1.0, 0.0, 4.0};
    const std::vector<double> grid = {0.0, 1.0};
    const std::vector<double> i3 = {0.0, 0.0};
    CHECK_THROWS_AS(solve_angles_quadrature(consts, pz, i3, grid, {0, 0, 0, 0}),
                    numerical_error);
  }
}
