#pragma once

#include <Eigen/Dense>

namespace p33::linalg {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr double kDefaultRankTol = 1e-10;

// Singular values in decreasing order.
Eigen::VectorXd singular_values(const MatrixXc& m);

// Number of singular values above rel_tol * (largest singular value).
int numeric_rank(const MatrixXc& m, double rel_tol = kDefaultRankTol);

// Orthonormal basis (as columns) of {v : m v = 0}.
MatrixXc nullspace(const MatrixXc& m, double rel_tol = kDefaultRankTol);

// Orthonormal rows spanning the row space of m.
MatrixXc row_space_basis(const MatrixXc& m, double rel_tol = kDefaultRankTol);

// Largest principal angle (radians) between the row spaces of a and b.
// Returns pi/2 when the numeric ranks differ.
double max_principal_angle(const MatrixXc& a, const MatrixXc& b,
                           double rel_tol = kDefaultRankTol);

// Least-squares X with a X = b.
MatrixXc solve_least_squares(const MatrixXc& a, const MatrixXc& b);

}  // namespace p33::linalg
