#pragma once

#include <array>

#include "p33/grassmann.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

/// Per-tetrahedron gauge of a single 4-simplex, indexed by matrix row: x_t is
/// rescaled by scale[k] (and d/dx_t by its inverse), optionally after the
/// interchange d/dx_t <-> x_t.
struct GaugeTransform {
  std::array<Complex, 5> scale{1.0, 1.0, 1.0, 1.0, 1.0};
  std::array<bool, 5> interchange{};

  static GaugeTransform identity() { return {}; }
};

// Phi = sum over 2-faces ijk of sign(l,i,j,k,m) phi_ijk x_{ijkl} x_{ijkm}, l < m
// the two remaining vertices.
GrassmannElement quadratic_form(const WeightMatrix& f);
// -1/2 x^T F x with x in row order; equal to quadratic_form.
GrassmannElement quadratic_form_matrix(const WeightMatrix& f);

GrassmannElement gaussian_weight(const WeightMatrix& f);
// (d/dx_t - x_t) applied to the Gaussian weight.
GrassmannElement odd_weight(const WeightMatrix& f, const Tet& t);

WeightMatrix apply_gauge_to_F(const WeightMatrix& f, const GaugeTransform& g);

// Positive scales making |F_ij| as uniform as possible (least squares in
// log|F_ij|); applying it leaves the geometric mean of the entries at 1.
GaugeTransform balancing_gauge(const WeightMatrix& f);

// Monomials containing generator t are multiplied by factors[t].
GrassmannElement rescale_generators(const GrassmannElement& w,
                                    std::span<const Complex> factors);

// Rows and columns of F (0-based, opposite-vertex ordering).
struct RatioIndex {
  std::array<std::size_t, 2> rows;
  std::array<std::size_t, 2> cols;
};

// F[r1,c1] F[r2,c2] / (F[r1,c2] F[r2,c1]).
Complex double_ratio(const WeightMatrix& f, const RatioIndex& idx);

// Five double ratios that are independent for generic F.
const std::array<RatioIndex, 5>& canonical_ratios();
std::array<Complex, 5> canonical_double_ratios(const WeightMatrix& f);

// Largest relative deviation between two ratio tuples.
double ratio_deviation(const std::array<Complex, 5>& a,
                       const std::array<Complex, 5>& b);

}  // namespace p33
