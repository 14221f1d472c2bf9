#include "p33/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "p33/errors.hpp"
#include "p33/operators.hpp"

namespace p33 {

SpacePtr simplex_space(const Simplex4& simplex) {
  std::vector<Tet> labels;
  for (std::size_t k = 0; k < 5; ++k) labels.push_back(tet_omitting(simplex, k));
  return GeneratorSpace::make(std::move(labels));
}

WeightMatrix::WeightMatrix(Simplex4 simplex, const Mat5& entries,
                           double skew_tol)
    : simplex_(simplex), entries_(entries) {
  if (!std::is_sorted(simplex_.begin(), simplex_.end()) ||
      std::adjacent_find(simplex_.begin(), simplex_.end()) != simplex_.end()) {
    throw InvalidInput("simplex vertices must be strictly increasing");
  }
  const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1e-300);
  if ((entries_ + entries_.transpose()).cwiseAbs().maxCoeff() > skew_tol * scale) {
    throw InvalidInput("weight matrix is not skew-symmetric");
  }
  space_ = simplex_space(simplex_);
}

WeightMatrix WeightMatrix::zero(Simplex4 simplex) {
  return WeightMatrix(simplex, Mat5::Zero());
}

std::pair<std::size_t, std::size_t> WeightMatrix::entry_of_face(
    const Face& face) const {
  std::array<std::size_t, 2> rest{};
  std::size_t n = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    if (std::find(face.begin(), face.end(), simplex_[k]) == face.end()) {
      if (n == 2) throw InvalidInput("face not in simplex");
      rest[n++] = k;
    }
  }
  if (n != 2) throw InvalidInput("face not in simplex");
  return {rest[0], rest[1]};
}

WeightMatrix WeightMatrix::from_phi(Simplex4 simplex,
                                    const std::map<Face, Complex>& phi) {
  WeightMatrix f = zero(simplex);
  for (const auto& [face, value] : phi) {
    const auto [k, l] = f.entry_of_face(face);
    const Complex v = entry_sign(k, l) * value;
    f.entries_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = v;
    f.entries_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = -v;
  }
  return f;
}

Complex WeightMatrix::phi(const Face& face) const {
  const auto [k, l] = entry_of_face(face);
  return entry_sign(k, l) * (*this)(k, l);
}

std::map<Face, Complex> WeightMatrix::phis() const {
  std::map<Face, Complex> out;
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = k + 1; l < 5; ++l) {
      Face face{};
      std::size_t n = 0;
      for (std::size_t i = 0; i < 5; ++i) {
        if (i != k && i != l) face[n++] = simplex_[i];
      }
      out[face] = phi(face);
    }
  }
  return out;
}

GrassmannElement quadratic_form(const WeightMatrix& f) {
  const Simplex4& s = f.simplex();
  const SpacePtr& space = f.space();
  GrassmannElement q(space);
  for (const auto& [face, value] : f.phis()) {
    const auto [k, l] = f.entry_of_face(face);
    const int vl = s[k];
    const int vm = s[l];
    const std::array<int, 5> seq{vl, face[0], face[1], face[2], vm};
    const double eps = permutation_sign(seq);
    // x_{ijkl} omits m, x_{ijkm} omits l.
    const auto a = GrassmannElement::generator(space, space->require_index(tet_omitting(s, l)));
    const auto b = GrassmannElement::generator(space, space->require_index(tet_omitting(s, k)));
    q += (eps * value) * multiply(a, b);
  }
  return q;
}

GrassmannElement quadratic_form_matrix(const WeightMatrix& f) {
  const SpacePtr& space = f.space();
  GrassmannElement q(space);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t l = 0; l < 5; ++l) {
      if (k == l) continue;
      const auto a = GrassmannElement::generator(space, WeightMatrix::generator_of_row(k));
      const auto b = GrassmannElement::generator(space, WeightMatrix::generator_of_row(l));
      q += (-0.5 * f(k, l)) * multiply(a, b);
    }
  }
  return q;
}

GrassmannElement gaussian_weight(const WeightMatrix& f) {
  return exp_even(quadratic_form(f));
}

GrassmannElement odd_weight(const WeightMatrix& f, const Tet& t) {
  const std::size_t g = f.space()->require_index(t);
  LinearOperator d = LinearOperator::derivative(f.space(), g);
  d.set_gamma(g, -1.0);
  return apply(d, gaussian_weight(f));
}

WeightMatrix apply_gauge_to_F(const WeightMatrix& f, const GaugeTransform& g) {
  for (bool flag : g.interchange) {
    if (flag) {
      throw InvalidInput("apply_gauge_to_F: interchanges leave the Gaussian family");
    }
  }
  Mat5 a = Mat5::Zero();
  for (std::size_t k = 0; k < 5; ++k) {
    if (g.scale[k] == Complex{}) throw InvalidInput("gauge scale must be nonzero");
    a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = g.scale[k];
  }
  return WeightMatrix(f.simplex(), a * f.entries() * a);
}

GaugeTransform balancing_gauge(const WeightMatrix& f) {
  Eigen::Matrix<double, 10, 5> a = Eigen::Matrix<double, 10, 5>::Zero();
  Eigen::Matrix<double, 10, 1> rhs;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = i + 1; j < 5; ++j) {
      const double m = std::abs(f.entries()(i, j));
      if (m == 0.0) throw DegenerateError("phi", "balancing_gauge: vanishing entry");
      a(r, i) = a(r, j) = 1.0;
      rhs(r++) = -std::log(m);
    }
  }
  const Eigen::Matrix<double, 5, 1> alpha = a.colPivHouseholderQr().solve(rhs);
  GaugeTransform g;
  for (std::size_t k = 0; k < 5; ++k) g.scale[k] = std::exp(alpha(static_cast<Eigen::Index>(k)));
  return g;
}

GrassmannElement rescale_generators(const GrassmannElement& w,
                                    std::span<const Complex> factors) {
  if (factors.size() != w.num_generators()) {
    throw InvalidInput("rescale_generators: one factor per generator");
  }
  GrassmannElement out = w;
  auto c = out.coeffs();
  for (Mask m = 0; m < c.size(); ++m) {
    for (Mask r = m; r != 0; r &= r - 1) c[m] *= factors[__builtin_ctz(r)];
  }
  return out;
}

Complex double_ratio(const WeightMatrix& f, const RatioIndex& idx) {
  const auto [r1, r2] = idx.rows;
  const auto [c1, c2] = idx.cols;
  const double cut = 1e-12 * f.entries().cwiseAbs().maxCoeff();
  const Complex a = f(r1, c1), b = f(r2, c2), c = f(r1, c2), d = f(r2, c1);
  for (const Complex& e : {a, b, c, d}) {
    if (!(std::abs(e) > cut)) {
      throw DegenerateError("double_ratio_entry",
                            "double ratio addresses a vanishing entry of F");
    }
  }
  return (a * b) / (c * d);
}

const std::array<RatioIndex, 5>& canonical_ratios() {
  static const std::array<RatioIndex, 5> kRatios{{
      {{0, 1}, {3, 4}},
      {{0, 2}, {3, 4}},
      {{0, 1}, {2, 4}},
      {{0, 2}, {1, 3}},
      {{0, 3}, {1, 4}},
  }};
  return kRatios;
}

std::array<Complex, 5> canonical_double_ratios(const WeightMatrix& f) {
  std::array<Complex, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = double_ratio(f, canonical_ratios()[i]);
  return out;
}

double ratio_deviation(const std::array<Complex, 5>& a,
                       const std::array<Complex, 5>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace p33
