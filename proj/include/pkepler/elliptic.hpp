#pragma once

namespace pkepler {

// Elliptic modulus kappa, restricted to [0, 1] at construction.
class EllipticModulus {
 public:
  explicit EllipticModulus(double kappa);
  double value() const { return kappa_; }

 private:
  double kappa_;
};

// Complete elliptic integral K(kappa) = int_0^{pi/2} dθ / sqrt(1 - κ² sin²θ)
// by the arithmetic-geometric mean.  Rejects kappa = 1 (logarithmic
// divergence).
double elliptic_K(EllipticModulus kappa);

// Jacobi amplitude, the inverse of the incomplete integral of the first
// kind.  Continuous and strictly increasing in u; am(u, 1) degenerates to the
// Gudermannian 2 atan(e^u) - pi/2.
double jacobi_am(double u, EllipticModulus kappa);

struct JacobiSCD {
  double sn, cn, dn;
};

// sn = sin(am), cn = cos(am), dn = sqrt(1 - κ² sn²).
JacobiSCD jacobi_sn_cn_dn(double u, EllipticModulus kappa);

// Incomplete elliptic integral of the third kind,
//   Pi(n; phi, kappa) = int_0^phi dθ / ((1 - n sin²θ) sqrt(1 - κ² sin²θ)),
// via the Carlson symmetric forms.  Requires kappa < 1 and no pole of the
// integrand on the path (n sin²θ < 1 throughout), rejected otherwise.
double elliptic_Pi_incomplete(double n, double phi, EllipticModulus kappa);

// Carlson symmetric integrals (duplication algorithm).
double carlson_rf(double x, double y, double z);
double carlson_rc(double x, double y);
double carlson_rj(double x, double y, double z, double p);

}  // namespace pkepler
