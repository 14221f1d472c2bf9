#pragma once

#include <map>
#include <vector>

#include "p33/operators.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

// The ten edges / 2-faces of a 4-simplex, lexicographic.
std::vector<Edge> simplex_edges(const Simplex4& s);
std::vector<Face> simplex_faces(const Simplex4& s);

struct EdgeOperatorFamily {
  Simplex4 simplex{};
  SpacePtr space;
  std::map<Edge, LinearOperator> operators;
  bool normalized = false;
  // Factor the normalization kernel vector was divided by.
  Complex overall_scale{1.0};

  const LinearOperator& at(const Edge& e) const;
  // Rows = edges in lexicographic order, columns = (betas, gammas).
  linalg::MatrixXc matrix() const;
};

LinearOperator raw_edge_operator(const WeightMatrix& f, const Edge& edge);
EdgeOperatorFamily raw_family(const WeightMatrix& f);
EdgeOperatorFamily normalize_family(const WeightMatrix& f);

// Largest coefficient of sum_b (delta 1_i)_b d_b over vertices i, relative to
// the family maximum.
double vertex_coboundary_residual(const EdgeOperatorFamily& fam);

struct WExtraction {
  Cochain nu;     // representative of the non-coboundary dependence
  Cochain omega;  // delta nu, largest component scaled to 1
};

WExtraction extract_nu_and_w(const EdgeOperatorFamily& fam);
Cochain extract_w_cocycle(const EdgeOperatorFamily& fam);

// Explicit operator for edge 12 of 12345 (vertex positions 0,1) written in
// terms of the phi's, up to a scalar.
LinearOperator explicit_edge12_operator(const WeightMatrix& f);

// Relative distance between a and the best multiple of b.
double proportionality_residual(const linalg::VectorXc& a,
                                const linalg::VectorXc& b);

// Cochain helpers for a single 4-simplex.
Cochain cochain_from_vector(const ComplexPtr& complex, int degree,
                            const linalg::VectorXc& v);
linalg::VectorXc cochain_to_vector(const Cochain& c);

}  // namespace p33
