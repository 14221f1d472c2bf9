#include "p33/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace p33::linalg {

Eigen::VectorXd singular_values(const MatrixXc& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<MatrixXc> svd(m);
  return svd.singularValues();
}

int numeric_rank(const MatrixXc& m, double rel_tol) {
  const Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

MatrixXc nullspace(const MatrixXc& m, double rel_tol) {
  const auto n = m.cols();
  if (m.rows() == 0) return MatrixXc::Identity(n, n);
  Eigen::JacobiSVD<MatrixXc> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    rank = static_cast<int>((s.array() > rel_tol * s(0)).count());
  }
  return svd.matrixV().rightCols(n - rank);
}

MatrixXc row_space_basis(const MatrixXc& m, double rel_tol) {
  if (m.rows() == 0) return MatrixXc(0, m.cols());
  Eigen::JacobiSVD<MatrixXc> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  int rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    rank = static_cast<int>((s.array() > rel_tol * s(0)).count());
  }
  return svd.matrixV().leftCols(rank).adjoint();
}

double max_principal_angle(const MatrixXc& a, const MatrixXc& b,
                           double rel_tol) {
  const MatrixXc qa = row_space_basis(a, rel_tol);
  const MatrixXc qb = row_space_basis(b, rel_tol);
  if (qa.rows() != qb.rows()) return std::numbers::pi / 2;
  if (qa.rows() == 0) return 0.0;
  // Sines of the principal angles are the singular values of the part of qb
  // orthogonal to qa; this avoids the acos cancellation near zero angles.
  const MatrixXc residual = qb - (qb * qa.adjoint()) * qa;
  const Eigen::VectorXd s = singular_values(residual);
  const double sine = s.size() > 0 ? s(0) : 0.0;
  return std::asin(std::min(1.0, sine));
}

MatrixXc solve_least_squares(const MatrixXc& a, const MatrixXc& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

}  // namespace p33::linalg
