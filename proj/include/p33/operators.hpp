#pragma once

#include <span>
#include <utility>
#include <vector>

#include "p33/grassmann.hpp"
#include "p33/linalg.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

/// First-order operator sum_t (beta_t d/dx_t + gamma_t x_t) acting on the
/// Grassmann algebra of a GeneratorSpace.
class LinearOperator {
 public:
  explicit LinearOperator(SpacePtr space);

  static LinearOperator derivative(SpacePtr space, std::size_t t,
                                   Complex coeff = 1.0);
  static LinearOperator multiplication(SpacePtr space, std::size_t t,
                                       Complex coeff = 1.0);
  // coeffs = (beta_0..beta_{n-1}, gamma_0..gamma_{n-1}).
  static LinearOperator from_coefficients(SpacePtr space,
                                          const linalg::VectorXc& coeffs);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return beta_.size(); }

  Complex beta(std::size_t t) const { return beta_.at(t); }
  Complex gamma(std::size_t t) const { return gamma_.at(t); }
  void set_beta(std::size_t t, Complex v) { beta_.at(t) = v; }
  void set_gamma(std::size_t t, Complex v) { gamma_.at(t) = v; }
  // (beta_t, gamma_t).
  std::pair<Complex, Complex> component_at(std::size_t t) const {
    return {beta_.at(t), gamma_.at(t)};
  }
  void set_component(std::size_t t, std::pair<Complex, Complex> c) {
    beta_.at(t) = c.first;
    gamma_.at(t) = c.second;
  }

  double max_abs() const noexcept;
  // Generators carrying a coefficient above rel_tol * max_abs().
  std::vector<std::size_t> support(double rel_tol = 1e-12) const;
  linalg::VectorXc coefficients() const;

  // Interchange d/dx_t <-> x_t, i.e. swap (beta_t, gamma_t).
  LinearOperator interchanged(std::size_t t) const;

  // Same operator over a larger space.
  LinearOperator embed(const SpacePtr& target) const;

  LinearOperator& operator+=(const LinearOperator& o);
  LinearOperator& operator*=(Complex s);

 private:
  SpacePtr space_;
  std::vector<Complex> beta_;
  std::vector<Complex> gamma_;
};

LinearOperator operator+(LinearOperator a, const LinearOperator& b);
LinearOperator operator*(Complex s, LinearOperator a);

GrassmannElement apply(const LinearOperator& d, const GrassmannElement& f);

// Anticommutator [d1, d2]_+ as a scalar.
Complex scalar_product(const LinearOperator& d1, const LinearOperator& d2);
// Single-generator summand of scalar_product.
Complex partial_scalar_product(const LinearOperator& d1,
                               const LinearOperator& d2, std::size_t t);

/// Subspace of operators given by a basis over one space. The coefficient
/// matrix has one row per operator and 2n columns (betas then gammas).
class OperatorSubspace {
 public:
  OperatorSubspace(SpacePtr space, std::vector<LinearOperator> basis);
  // Rows of a coefficient matrix, reduced to an independent set.
  static OperatorSubspace from_rows(SpacePtr space,
                                    const linalg::MatrixXc& rows,
                                    double rel_tol = linalg::kDefaultRankTol);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<LinearOperator>& basis() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  linalg::MatrixXc matrix() const;

  // max |<b_i, b_j>| relative to the largest squared coefficient.
  double isotropy_residual() const;

 private:
  SpacePtr space_;
  std::vector<LinearOperator> basis_;
};

double max_principal_angle(const OperatorSubspace& a,
                           const OperatorSubspace& b);

// The five operators p + F x in row order of F.
OperatorSubspace isotropic_span_from_F(const WeightMatrix& f);

// Operators supported on the candidate generators that annihilate w.
OperatorSubspace annihilator_of(const GrassmannElement& w,
                                std::span<const std::size_t> candidates,
                                double rel_tol = linalg::kDefaultRankTol);
OperatorSubspace annihilator_of(const GrassmannElement& w,
                                double rel_tol = linalg::kDefaultRankTol);

}  // namespace p33
