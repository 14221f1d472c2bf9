#include "p33/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "p33/errors.hpp"

namespace p33 {
namespace {

void require_same(const LinearOperator& a, const LinearOperator& b) {
  if (!same_space(a.space(), b.space())) {
    throw SpaceMismatch("operators live in different spaces");
  }
}

}  // namespace

LinearOperator::LinearOperator(SpacePtr space)
    : space_(std::move(space)),
      beta_(space_->size(), Complex{}),
      gamma_(space_->size(), Complex{}) {}

LinearOperator LinearOperator::derivative(SpacePtr space, std::size_t t,
                                          Complex coeff) {
  LinearOperator d(std::move(space));
  d.beta_.at(t) = coeff;
  return d;
}

LinearOperator LinearOperator::multiplication(SpacePtr space, std::size_t t,
                                              Complex coeff) {
  LinearOperator d(std::move(space));
  d.gamma_.at(t) = coeff;
  return d;
}

LinearOperator LinearOperator::from_coefficients(
    SpacePtr space, const linalg::VectorXc& coeffs) {
  LinearOperator d(std::move(space));
  const auto n = static_cast<Eigen::Index>(d.size());
  if (coeffs.size() != 2 * n) {
    throw InvalidInput("operator coefficient vector has wrong length");
  }
  for (Eigen::Index t = 0; t < n; ++t) {
    d.beta_[t] = coeffs(t);
    d.gamma_[t] = coeffs(n + t);
  }
  return d;
}

double LinearOperator::max_abs() const noexcept {
  double m = 0.0;
  for (std::size_t t = 0; t < size(); ++t) {
    m = std::max({m, std::abs(beta_[t]), std::abs(gamma_[t])});
  }
  return m;
}

std::vector<std::size_t> LinearOperator::support(double rel_tol) const {
  const double cut = rel_tol * max_abs();
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < size(); ++t) {
    if (std::abs(beta_[t]) > cut || std::abs(gamma_[t]) > cut) {
      out.push_back(t);
    }
  }
  return out;
}

linalg::VectorXc LinearOperator::coefficients() const {
  const auto n = static_cast<Eigen::Index>(size());
  linalg::VectorXc v(2 * n);
  for (Eigen::Index t = 0; t < n; ++t) {
    v(t) = beta_[t];
    v(n + t) = gamma_[t];
  }
  return v;
}

LinearOperator LinearOperator::interchanged(std::size_t t) const {
  LinearOperator d = *this;
  std::swap(d.beta_.at(t), d.gamma_.at(t));
  return d;
}

LinearOperator LinearOperator::embed(const SpacePtr& target) const {
  LinearOperator d(target);
  for (std::size_t t = 0; t < size(); ++t) {
    auto idx = target->index_of(space_->label(t));
    if (!idx) throw SpaceMismatch("embed: target lacks a generator");
    d.beta_[*idx] = beta_[t];
    d.gamma_[*idx] = gamma_[t];
  }
  return d;
}

LinearOperator& LinearOperator::operator+=(const LinearOperator& o) {
  require_same(*this, o);
  for (std::size_t t = 0; t < size(); ++t) {
    beta_[t] += o.beta_[t];
    gamma_[t] += o.gamma_[t];
  }
  return *this;
}

LinearOperator& LinearOperator::operator*=(Complex s) {
  for (std::size_t t = 0; t < size(); ++t) {
    beta_[t] *= s;
    gamma_[t] *= s;
  }
  return *this;
}

LinearOperator operator+(LinearOperator a, const LinearOperator& b) {
  return a += b;
}
LinearOperator operator*(Complex s, LinearOperator a) { return a *= s; }

GrassmannElement apply(const LinearOperator& d, const GrassmannElement& f) {
  if (!same_space(d.space(), f.space())) {
    throw SpaceMismatch("apply: operator and element in different spaces");
  }
  GrassmannElement out(f.space());
  for (std::size_t t = 0; t < d.size(); ++t) {
    const auto [b, g] = d.component_at(t);
    if (b != Complex{}) out += b * left_derivative(t, f);
    if (g != Complex{}) out += g * multiply_generator(t, f);
  }
  return out;
}

Complex partial_scalar_product(const LinearOperator& d1,
                               const LinearOperator& d2, std::size_t t) {
  require_same(d1, d2);
  if (t >= d1.size()) throw InvalidInput("generator outside space");
  return d1.beta(t) * d2.gamma(t) + d2.beta(t) * d1.gamma(t);
}

Complex scalar_product(const LinearOperator& d1, const LinearOperator& d2) {
  require_same(d1, d2);
  Complex s{};
  for (std::size_t t = 0; t < d1.size(); ++t) {
    s += partial_scalar_product(d1, d2, t);
  }
  return s;
}

OperatorSubspace::OperatorSubspace(SpacePtr space,
                                   std::vector<LinearOperator> basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
  for (const auto& d : basis_) {
    if (!same_space(d.space(), space_)) {
      throw SpaceMismatch("subspace basis in a different space");
    }
  }
  if (!basis_.empty() &&
      linalg::numeric_rank(matrix()) != static_cast<int>(basis_.size())) {
    throw InvalidInput("subspace basis is linearly dependent");
  }
}

OperatorSubspace OperatorSubspace::from_rows(SpacePtr space,
                                             const linalg::MatrixXc& rows,
                                             double rel_tol) {
  const linalg::MatrixXc q = linalg::row_space_basis(rows, rel_tol);
  std::vector<LinearOperator> basis;
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    basis.push_back(LinearOperator::from_coefficients(space, q.row(r).transpose()));
  }
  return OperatorSubspace(std::move(space), std::move(basis));
}

linalg::MatrixXc OperatorSubspace::matrix() const {
  const auto n = static_cast<Eigen::Index>(space_->size());
  linalg::MatrixXc m(static_cast<Eigen::Index>(basis_.size()), 2 * n);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    m.row(static_cast<Eigen::Index>(r)) = basis_[r].coefficients().transpose();
  }
  return m;
}

double OperatorSubspace::isotropy_residual() const {
  double scale = 0.0;
  for (const auto& d : basis_) scale = std::max(scale, d.max_abs());
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    for (std::size_t b = a; b < basis_.size(); ++b) {
      worst = std::max(worst, std::abs(scalar_product(basis_[a], basis_[b])));
    }
  }
  return worst / (scale * scale);
}

double max_principal_angle(const OperatorSubspace& a,
                           const OperatorSubspace& b) {
  if (!same_space(a.space(), b.space())) {
    throw SpaceMismatch("principal angle between different spaces");
  }
  return linalg::max_principal_angle(a.matrix(), b.matrix());
}

OperatorSubspace isotropic_span_from_F(const WeightMatrix& f) {
  std::vector<LinearOperator> rows;
  for (std::size_t k = 0; k < 5; ++k) {
    LinearOperator d(f.space());
    d.set_beta(WeightMatrix::generator_of_row(k), 1.0);
    for (std::size_t l = 0; l < 5; ++l) {
      if (l != k) d.set_gamma(WeightMatrix::generator_of_row(l), f(k, l));
    }
    rows.push_back(std::move(d));
  }
  return OperatorSubspace(f.space(), std::move(rows));
}

OperatorSubspace annihilator_of(const GrassmannElement& w,
                                std::span<const std::size_t> candidates,
                                double rel_tol) {
  if (w.is_zero()) throw InvalidInput("annihilator_of: element is zero");
  const std::size_t n = w.num_generators();
  const auto c = static_cast<Eigen::Index>(candidates.size());
  // Column j < c: d/dx of candidate j applied to w; column c + j: x * w.
  linalg::MatrixXc a(static_cast<Eigen::Index>(w.dimension()), 2 * c);
  for (Eigen::Index j = 0; j < c; ++j) {
    const std::size_t t = candidates[static_cast<std::size_t>(j)];
    if (t >= n) throw InvalidInput("annihilator_of: candidate outside space");
    const GrassmannElement dw = left_derivative(t, w);
    const GrassmannElement xw = multiply_generator(t, w);
    for (Eigen::Index m = 0; m < a.rows(); ++m) {
      a(m, j) = dw.coeffs()[static_cast<std::size_t>(m)];
      a(m, c + j) = xw.coeffs()[static_cast<std::size_t>(m)];
    }
  }
  const linalg::MatrixXc kernel = linalg::nullspace(a, rel_tol);
  const auto full = static_cast<Eigen::Index>(n);
  linalg::MatrixXc rows = linalg::MatrixXc::Zero(kernel.cols(), 2 * full);
  for (Eigen::Index r = 0; r < kernel.cols(); ++r) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const auto t = static_cast<Eigen::Index>(candidates[static_cast<std::size_t>(j)]);
      rows(r, t) = kernel(j, r);
      rows(r, full + t) = kernel(c + j, r);
    }
  }
  return OperatorSubspace::from_rows(w.space(), rows, rel_tol);
}

OperatorSubspace annihilator_of(const GrassmannElement& w, double rel_tol) {
  std::vector<std::size_t> all(w.num_generators());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
  return annihilator_of(w, all, rel_tol);
}

}  // namespace p33
