#pragma once

#include <map>

#include "p33/linalg.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

struct SnCnDn {
  Complex sn, cn, dn;
};

// Jacobi functions for modulus k (parameter m = k^2, so dn^2 + k^2 sn^2 = 1)
// by descending Landen transformation.
SnCnDn jacobi_sn_cn_dn(Complex u, Complex k);

// sn/(cn dn) at u/2, the entries of the elliptic weight matrix.
Complex half_angle_ratio(Complex u, Complex k);

/// Modulus and one coordinate per vertex.
class EllipticParams {
 public:
  EllipticParams(Complex modulus, std::map<int, Complex> coords,
                 double margin = 1e-6);

  Complex modulus() const noexcept { return modulus_; }
  const std::map<int, Complex>& coords() const noexcept { return coords_; }
  Complex x(int vertex) const;

 private:
  Complex modulus_;
  std::map<int, Complex> coords_;
};

// omega_ijk = sn(xi - xj) sn(xi - xk) sn(xj - xk).
Cochain elliptic_cocycle(const EllipticParams& p, const ComplexPtr& complex);
// nu_ij = sn(xi - xj) / (k^2 sn xi sn xj).
Cochain elliptic_primitive(const EllipticParams& p, const ComplexPtr& complex);
// F at (row omit-i, col omit-j) = sn/(cn dn)((xi - xj)/2).
WeightMatrix elliptic_F(const EllipticParams& p, const Simplex4& simplex);

// f^(1345)|_1234 / f^(2345)|_1234 (vertex positions of the simplex) in closed
// form.
Complex elliptic_kappa(const EllipticParams& p, const Simplex4& simplex);

// Ratios omega_{1jk}/omega_{123} over the five other faces through the first
// vertex.
std::array<Complex, 5> cocycle_ratios(const Cochain& omega);

// Jacobian of cocycle_ratios(elliptic_cocycle) with respect to the modulus
// and the coordinates of vertices 2..5 (vertex 1 fixed).
linalg::MatrixXc elliptic_jacobian(const EllipticParams& p,
                                   const Simplex4& simplex, double step = 1e-6);

}  // namespace p33
