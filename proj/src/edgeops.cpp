#include "p33/edgeops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "p33/errors.hpp"

namespace p33 {
namespace {

using linalg::MatrixXc;
using linalg::VectorXc;

std::size_t position(const Simplex4& s, int v) {
  auto it = std::find(s.begin(), s.end(), v);
  if (it == s.end()) throw InvalidInput("vertex not in simplex");
  return static_cast<std::size_t>(it - s.begin());
}

// (delta 1_v) on edge e.
double vertex_cob(const Edge& e, int v) {
  return (e[1] == v ? 1.0 : 0.0) - (e[0] == v ? 1.0 : 0.0);
}

Eigen::Index scaled_argmax(const VectorXc& v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return i;
}

}  // namespace

std::vector<Edge> simplex_edges(const Simplex4& s) {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) out.push_back({s[a], s[b]});
  }
  return out;
}

std::vector<Face> simplex_faces(const Simplex4& s) {
  std::vector<Face> out;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) {
      for (std::size_t c = b + 1; c < 5; ++c) out.push_back({s[a], s[b], s[c]});
    }
  }
  return out;
}

const LinearOperator& EdgeOperatorFamily::at(const Edge& e) const {
  auto it = operators.find(e);
  if (it == operators.end()) throw InvalidInput("edge not in family");
  return it->second;
}

MatrixXc EdgeOperatorFamily::matrix() const {
  MatrixXc m(static_cast<Eigen::Index>(operators.size()),
             2 * static_cast<Eigen::Index>(space->size()));
  Eigen::Index r = 0;
  for (const auto& [e, d] : operators) m.row(r++) = d.coefficients().transpose();
  return m;
}

LinearOperator raw_edge_operator(const WeightMatrix& f, const Edge& edge) {
  const Simplex4& s = f.simplex();
  const std::size_t i = position(s, edge[0]);
  const std::size_t j = position(s, edge[1]);
  if (i == j) throw InvalidInput("degenerate edge");
  const MatrixXc rows = isotropic_span_from_F(f).matrix();
  const auto gi = static_cast<Eigen::Index>(WeightMatrix::generator_of_row(i));
  const auto gj = static_cast<Eigen::Index>(WeightMatrix::generator_of_row(j));
  // Columns of the two tetrahedra that do not contain the edge.
  MatrixXc sub(5, 4);
  sub << rows.col(gi), rows.col(gj), rows.col(5 + gi), rows.col(5 + gj);
  const MatrixXc kernel = linalg::nullspace(sub.transpose());
  if (kernel.cols() != 1) {
    throw DegenerateError(
        "edge_operator_dimension",
        "edge operator space has dimension " + std::to_string(kernel.cols()));
  }
  VectorXc d = rows.transpose() * kernel.col(0);
  d /= d(scaled_argmax(d));
  return LinearOperator::from_coefficients(f.space(), d);
}

EdgeOperatorFamily raw_family(const WeightMatrix& f) {
  EdgeOperatorFamily fam;
  fam.simplex = f.simplex();
  fam.space = f.space();
  for (const Edge& e : simplex_edges(f.simplex())) {
    fam.operators.emplace(e, raw_edge_operator(f, e));
  }
  return fam;
}

EdgeOperatorFamily normalize_family(const WeightMatrix& f) {
  EdgeOperatorFamily fam = raw_family(f);
  const MatrixXc d = fam.matrix();
  const std::vector<Edge> edges = simplex_edges(f.simplex());
  MatrixXc system(5 * d.cols(), 10);
  for (std::size_t vi = 0; vi < 5; ++vi) {
    const int v = f.simplex()[vi];
    for (Eigen::Index b = 0; b < 10; ++b) {
      system.block(static_cast<Eigen::Index>(vi) * d.cols(), b, d.cols(), 1) =
          vertex_cob(edges[static_cast<std::size_t>(b)], v) * d.row(b).transpose();
    }
  }
  const MatrixXc kernel = linalg::nullspace(system);
  if (kernel.cols() != 1) {
    throw DegenerateError("normalization_kernel",
                          "normalization kernel has dimension " +
                              std::to_string(kernel.cols()));
  }
  VectorXc lambda = kernel.col(0);
  const Complex scale = lambda(scaled_argmax(lambda));
  lambda /= scale;
  Eigen::Index b = 0;
  for (auto& [e, op] : fam.operators) op *= lambda(b++);
  fam.normalized = true;
  fam.overall_scale = scale;
  return fam;
}

double vertex_coboundary_residual(const EdgeOperatorFamily& fam) {
  const MatrixXc d = fam.matrix();
  const double scale = std::max(d.cwiseAbs().maxCoeff(), 1e-300);
  double worst = 0.0;
  for (int v : fam.simplex) {
    VectorXc sum = VectorXc::Zero(d.cols());
    Eigen::Index b = 0;
    for (const auto& [e, op] : fam.operators) {
      sum += vertex_cob(e, v) * d.row(b++).transpose();
    }
    worst = std::max(worst, sum.cwiseAbs().maxCoeff());
  }
  return worst / scale;
}

Cochain cochain_from_vector(const ComplexPtr& complex, int degree,
                            const VectorXc& v) {
  Cochain c(complex, degree);
  const auto keys = complex->faces_of_dimension(degree);
  if (static_cast<Eigen::Index>(keys.size()) != v.size()) {
    throw InvalidInput("cochain vector has wrong length");
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    c.set(keys[i], v(static_cast<Eigen::Index>(i)));
  }
  return c;
}

VectorXc cochain_to_vector(const Cochain& c) {
  VectorXc v(static_cast<Eigen::Index>(c.values().size()));
  Eigen::Index i = 0;
  for (const auto& [k, x] : c.values()) v(i++) = x;
  return v;
}

WExtraction extract_nu_and_w(const EdgeOperatorFamily& fam) {
  if (!fam.normalized) throw InvalidInput("extract_w_cocycle: family not normalized");
  const MatrixXc d = fam.matrix();
  const MatrixXc kernel = linalg::nullspace(d.transpose());
  if (kernel.cols() != 5) {
    throw DegenerateError("dependence_kernel",
                          "edge-operator dependence kernel has dimension " +
                              std::to_string(kernel.cols()));
  }
  const std::vector<Edge> edges = simplex_edges(fam.simplex);
  MatrixXc cob(10, 5);
  for (Eigen::Index b = 0; b < 10; ++b) {
    for (Eigen::Index vi = 0; vi < 5; ++vi) {
      cob(b, vi) = vertex_cob(edges[static_cast<std::size_t>(b)], fam.simplex[vi]);
    }
  }
  Eigen::HouseholderQR<MatrixXc> qr(cob);
  const MatrixXc q = qr.householderQ() * MatrixXc::Identity(10, 4);
  const MatrixXc projected = kernel - q * (q.adjoint() * kernel);
  Eigen::JacobiSVD<MatrixXc> svd(projected, Eigen::ComputeThinU);
  const VectorXc nu_vec = svd.matrixU().col(0);

  const ComplexPtr complex = SimplexComplex::simplex(fam.simplex);
  Cochain nu = cochain_from_vector(complex, 1, nu_vec);
  Cochain omega = coboundary(nu);
  const VectorXc w = cochain_to_vector(omega);
  if (w.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateError("omega", "extracted W-cocycle vanishes");
  }
  omega *= 1.0 / w(scaled_argmax(w));
  return {std::move(nu), std::move(omega)};
}

Cochain extract_w_cocycle(const EdgeOperatorFamily& fam) {
  return extract_nu_and_w(fam).omega;
}

LinearOperator explicit_edge12_operator(const WeightMatrix& f) {
  const Simplex4& s = f.simplex();
  const auto p = [&](std::size_t a, std::size_t b, std::size_t c) {
    return f.phi({s[a - 1], s[b - 1], s[c - 1]});
  };
  const auto gen = [&](std::size_t omit) {
    return WeightMatrix::generator_of_row(omit - 1);
  };
  LinearOperator d(f.space());
  d.set_beta(gen(3), p(1, 3, 4) * p(2, 3, 5) - p(1, 3, 5) * p(2, 3, 4));
  d.set_beta(gen(4), p(1, 3, 4) * p(2, 4, 5) - p(1, 4, 5) * p(2, 3, 4));
  d.set_beta(gen(5), p(1, 3, 5) * p(2, 4, 5) - p(1, 4, 5) * p(2, 3, 5));
  d.set_gamma(gen(3), -(p(1, 2, 4) * p(1, 3, 5) * p(2, 4, 5) -
                        p(1, 2, 5) * p(1, 3, 4) * p(2, 4, 5) -
                        p(1, 2, 4) * p(1, 4, 5) * p(2, 3, 5) +
                        p(1, 2, 5) * p(1, 4, 5) * p(2, 3, 4)));
  d.set_gamma(gen(4), p(1, 2, 3) * p(1, 3, 5) * p(2, 4, 5) -
                          p(1, 2, 3) * p(1, 4, 5) * p(2, 3, 5) -
                          p(1, 2, 5) * p(1, 3, 4) * p(2, 3, 5) +
                          p(1, 2, 5) * p(1, 3, 5) * p(2, 3, 4));
  d.set_gamma(gen(5), -(p(1, 2, 3) * p(1, 3, 4) * p(2, 4, 5) -
                        p(1, 2, 4) * p(1, 3, 4) * p(2, 3, 5) -
                        p(1, 2, 3) * p(1, 4, 5) * p(2, 3, 4) +
                        p(1, 2, 4) * p(1, 3, 5) * p(2, 3, 4)));
  return d;
}

double proportionality_residual(const VectorXc& a, const VectorXc& b) {
  const Complex bb = b.squaredNorm();
  if (std::abs(bb) == 0.0) return a.norm() == 0.0 ? 0.0 : 1.0;
  const Complex c = b.dot(a) / bb;  // b^H a / |b|^2
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  return (a - c * b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace p33
