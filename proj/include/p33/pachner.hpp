#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "p33/edgeops.hpp"
#include "p33/operators.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

enum class Side { kLhs, kRhs };
const char* side_name(Side s);

/// Vertices 1..6, the six 4-simplices of the boundary of the 5-simplex in
/// lexicographic order (the first three form the l.h.s. of the move), inner
/// and boundary tetrahedra.
class PachnerScene {
 public:
  static const PachnerScene& standard();

  const ComplexPtr& complex() const noexcept { return complex_; }
  const std::array<Simplex4, 6>& simplices() const noexcept { return simplices_; }
  std::array<std::size_t, 3> side_simplices(Side s) const;
  // In the integration order, innermost first.
  const std::array<Tet, 3>& inner(Side s) const;
  // Rows: l.h.s. simplices; columns: r.h.s. simplices.
  const std::array<std::array<Tet, 3>, 3>& table() const noexcept { return table_; }
  const SpacePtr& boundary_space() const noexcept { return boundary_space_; }
  const SpacePtr& side_space(Side s) const;
  const std::vector<Tet>& tetrahedra() const noexcept { return tets_; }

  bool is_inner(const Tet& t) const;
  bool is_boundary(const Tet& t) const;
  // The two simplices containing t, in increasing order.
  std::array<std::size_t, 2> owners(const Tet& t) const;
  // Sign changes of the partial scalar product while walking around a 2-face:
  // one per tetrahedron plus one per inner tetrahedron.
  int sign_walk_count(const Face& f) const;

 private:
  PachnerScene();

  ComplexPtr complex_;
  std::array<Simplex4, 6> simplices_{};
  std::array<Tet, 3> inner_lhs_{}, inner_rhs_{};
  std::array<std::array<Tet, 3>, 3> table_{};
  std::vector<Tet> tets_;
  SpacePtr boundary_space_, lhs_space_, rhs_space_;
};

Cochain restrict_cocycle(const Cochain& omega, const Simplex4& u);

using Mat2 = Eigen::Matrix2cd;

// Identification of the (d/dx_t, x_t) plane of a shared tetrahedron as seen
// from its two simplices; the matrices act on (beta_t, gamma_t).
struct TetGauge {
  Tet tet{};
  std::array<std::size_t, 2> owners{};
  std::array<Mat2, 2> g{Mat2::Identity(), Mat2::Identity()};
  bool in_tree = false;
  double fit_residual = 0.0;
  double orthogonality_residual = 0.0;

  double residual() const { return std::max(fit_residual, orthogonality_residual); }
  bool interchange(std::size_t which) const;
  Complex scale(std::size_t which) const;
};

struct ReconciledSimplex {
  Simplex4 simplex{};
  WeightMatrix local_F;
  EdgeOperatorFamily local_family;
  Complex scale{1.0};
  // Weight and operators in the global gauge.
  GrassmannElement weight;
  std::map<Edge, LinearOperator> operators;
  // Present when the simplex carries no interchange.
  std::optional<WeightMatrix> global_F;
};

struct ReconciledWeights {
  std::vector<ReconciledSimplex> simplices;
  std::vector<TetGauge> gauges;  // lexicographic in tet
  double max_loop_residual = 0.0;
  int interchange_count = 0;
};

ReconciledWeights reconcile(const Cochain& omega, double tol = 1e-8);

LinearOperator compose_edge_operator(const ReconciledWeights& rw, Side side,
                                     const Edge& edge, double tol = 1e-9);
// Largest inner-tetrahedron mismatch over all edges of the side.
double inner_agreement_residual(const ReconciledWeights& rw, Side side);

GrassmannElement side_weight(const ReconciledWeights& rw, Side side);

struct Verify33 {
  double max_residual = 0.0;
  Complex constant{};
};
Verify33 verify_33(const GrassmannElement& lhs, const GrassmannElement& rhs);
Verify33 verify_33(const ReconciledWeights& rw);

struct PachnerReport {
  Verify33 verification;
  double annihilator_angle = 0.0;
  int lhs_annihilator_dim = 0;
  int rhs_annihilator_dim = 0;
  double lhs_isotropy = 0.0;
  double rhs_isotropy = 0.0;
  int composed_rank_lhs = 0;
  int composed_rank_rhs = 0;
  double composed_agreement = 0.0;
  double composed_annihilation = 0.0;
  std::vector<TetGauge> gauges;
  double max_loop_residual = 0.0;
};

PachnerReport run_pachner(const Cochain& omega, double tol = 1e-8);

}  // namespace p33
