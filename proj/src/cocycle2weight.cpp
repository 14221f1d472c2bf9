#include "p33/cocycle2weight.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "p33/errors.hpp"

namespace p33 {
namespace {

using linalg::MatrixXc;
using linalg::VectorXc;

bool contains(const auto& range, int v) {
  return std::find(range.begin(), range.end(), v) != range.end();
}

int opposite_vertex(const Simplex4& s, const Tet& t) {
  for (int v : s) {
    if (!contains(t, v)) return v;
  }
  throw InvalidInput("tetrahedron not in simplex");
}

void require_tet(const Simplex4& s, const Tet& t) {
  for (int v : t) {
    if (!contains(s, v)) throw InvalidInput("tetrahedron not in simplex");
  }
}

std::map<Edge, Complex> flip_through(const std::map<Edge, Complex>& alpha,
                                     int vertex, std::vector<Edge>* flipped) {
  std::map<Edge, Complex> out = alpha;
  for (auto& [e, a] : out) {
    if (e[0] == vertex || e[1] == vertex) {
      a = -a;
      if (flipped) flipped->push_back(e);
    }
  }
  return out;
}

LinearOperator combine(const EdgeOperatorFamily& fam,
                       const std::map<Edge, Complex>& alpha) {
  LinearOperator f(fam.space);
  for (const auto& [e, d] : fam.operators) f += alpha.at(e) * d;
  return f;
}

Complex dominant(const LinearOperator& f, std::size_t g) {
  const auto [b, c] = f.component_at(g);
  return std::abs(b) >= std::abs(c) ? b : c;
}

}  // namespace

Simplex4 simplex_of(const Cochain& c) {
  const auto& v = c.complex()->vertices();
  if (v.size() != 5 || c.complex()->top_simplices().size() != 1) {
    throw InvalidInput("cochain does not live on a single 4-simplex");
  }
  return {v[0], v[1], v[2], v[3], v[4]};
}

SqrtChoice SqrtChoice::principal(const Cochain& omega) {
  return with_signs(omega, 0);
}

SqrtChoice SqrtChoice::with_signs(const Cochain& omega, unsigned bits) {
  if (omega.degree() != 2) throw InvalidInput("SqrtChoice needs a 2-cochain");
  std::map<Face, Complex> roots;
  unsigned i = 0;
  for (const Face& f : simplex_faces(simplex_of(omega))) {
    Complex r = std::sqrt(omega.at(key_of(f)));
    if ((bits >> i) & 1u) r = -r;
    roots[f] = r;
    ++i;
  }
  return SqrtChoice(std::move(roots));
}

Complex SqrtChoice::at(const Face& s) const {
  auto it = roots_.find(s);
  if (it == roots_.end()) throw InvalidInput("SqrtChoice lacks a face");
  return it->second;
}

SqrtChoice SqrtChoice::flipped(const Face& s) const {
  SqrtChoice out = *this;
  auto it = out.roots_.find(s);
  if (it == out.roots_.end()) throw InvalidInput("SqrtChoice lacks a face");
  it->second = -it->second;
  return out;
}

void SqrtChoice::validate(const Cochain& omega, double rel_tol) const {
  for (const Face& f : simplex_faces(simplex_of(omega))) {
    const Complex w = omega.at(key_of(f));
    const Complex r = at(f);
    if (std::abs(r * r - w) > rel_tol * std::max(std::abs(w), 1e-300)) {
      throw InvalidInput("square root does not square to omega");
    }
  }
}

std::vector<ComponentKind> component_pattern(const LinearOperator& f,
                                             double tol) {
  std::vector<ComponentKind> out;
  const double floor = 1e-12 * f.max_abs();
  for (std::size_t g = 0; g < f.size(); ++g) {
    const double b = std::abs(f.beta(g));
    const double c = std::abs(f.gamma(g));
    if (std::max(b, c) <= floor) {
      out.push_back(ComponentKind::kZero);
    } else if (c <= tol * b) {
      out.push_back(ComponentKind::kDerivative);
    } else if (b <= tol * c) {
      out.push_back(ComponentKind::kMultiplication);
    } else {
      out.push_back(ComponentKind::kMixed);
    }
  }
  return out;
}

std::string pattern_string(const std::vector<ComponentKind>& p) {
  std::string s;
  for (ComponentKind k : p) {
    switch (k) {
      case ComponentKind::kZero: s += '0'; break;
      case ComponentKind::kDerivative: s += 'd'; break;
      case ComponentKind::kMultiplication: s += 'x'; break;
      case ComponentKind::kMixed: s += '?'; break;
    }
  }
  return s;
}

std::map<Edge, Complex> alpha_coefficients(const Cochain& omega,
                                           const SqrtChoice& s) {
  const Simplex4 simplex = simplex_of(omega);
  const double cut = 1e-14 * omega.max_abs();
  for (const Face& f : simplex_faces(simplex)) {
    if (!(std::abs(omega.at(key_of(f))) > cut)) {
      throw DegenerateError("omega_face", "cocycle vanishes on a 2-face");
    }
  }
  s.validate(omega, 1e-10);
  std::map<Edge, Complex> alpha;
  for (const Edge& b : simplex_edges(simplex)) {
    Complex a = 1.0;
    for (const Face& f : simplex_faces(simplex)) {
      const int shared = contains(f, b[0]) + contains(f, b[1]);
      if (shared == 2 || shared == 0) a *= s.at(f);
    }
    alpha[b] = a;
  }
  return alpha;
}

double superisotropy_residual(const LinearOperator& f) {
  const double n = f.max_abs();
  if (n == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t g = 0; g < f.size(); ++g) {
    worst = std::max(worst, std::abs(partial_scalar_product(f, f, g)));
  }
  return worst / (n * n);
}

SuperisotropicOperator superisotropic_f(const EdgeOperatorFamily& fam,
                                        const Cochain& omega,
                                        const SqrtChoice& s) {
  if (simplex_of(omega) != fam.simplex) {
    throw InvalidInput("cocycle and family live on different simplices");
  }
  const Cochain own = extract_w_cocycle(fam);
  if (proportionality_residual(cochain_to_vector(omega), cochain_to_vector(own)) > 1e-8) {
    throw InvalidInput("cocycle is not the W-cocycle of the family");
  }
  SuperisotropicOperator out{LinearOperator(fam.space), alpha_coefficients(omega, s), {}};
  out.f = combine(fam, out.alpha);
  return out;
}

SuperisotropicOperator build_f_t(const EdgeOperatorFamily& fam,
                                 const Cochain& omega, const SqrtChoice& s,
                                 const Tet& t) {
  require_tet(fam.simplex, t);
  const SuperisotropicOperator base = superisotropic_f(fam, omega, s);
  SuperisotropicOperator out{LinearOperator(fam.space), {}, {}};
  out.alpha = flip_through(base.alpha, opposite_vertex(fam.simplex, t), &out.flipped);
  out.f = combine(fam, out.alpha);

  // Every component outside t must switch between d/dx and x; t keeps its kind.
  const auto before = component_pattern(base.f);
  const auto after = component_pattern(out.f);
  const std::size_t gt = fam.space->require_index(t);
  for (std::size_t g = 0; g < after.size(); ++g) {
    const bool pure = (before[g] == ComponentKind::kDerivative ||
                       before[g] == ComponentKind::kMultiplication) &&
                      (after[g] == ComponentKind::kDerivative ||
                       after[g] == ComponentKind::kMultiplication);
    if (!pure || (g == gt) != (before[g] == after[g])) {
      throw ConsistencyError("f^(t) component pattern " + pattern_string(after) +
                             " inconsistent with branch pattern " +
                             pattern_string(before));
    }
  }
  return out;
}

SqrtChoice base_sqrt_choice(const EdgeOperatorFamily& fam,
                            const Cochain& omega) {
  const SqrtChoice principal = SqrtChoice::principal(omega);
  const std::vector<Face> faces = simplex_faces(fam.simplex);
  const auto alpha0 = alpha_coefficients(omega, principal);
  for (unsigned bits = 0; bits < (1u << faces.size()); ++bits) {
    std::map<Edge, Complex> alpha = alpha0;
    for (auto& [b, a] : alpha) {
      for (std::size_t i = 0; i < faces.size(); ++i) {
        if (!((bits >> i) & 1u)) continue;
        const int shared = contains(faces[i], b[0]) + contains(faces[i], b[1]);
        if (shared == 2 || shared == 0) a = -a;
      }
    }
    const auto p = component_pattern(combine(fam, alpha), 1e-8);
    if (std::all_of(p.begin(), p.end(),
                    [](ComponentKind k) { return k == ComponentKind::kDerivative; })) {
      return SqrtChoice::with_signs(omega, bits);
    }
  }
  throw DegenerateError("base_branch", "no sign choice makes f a pure derivative");
}

KappaTerms kappa_terms(const Cochain& omega, const SqrtChoice& s) {
  const Simplex4 v = simplex_of(omega);
  const auto r = [&](int a, int b, int c) {
    return s.at({v[a - 1], v[b - 1], v[c - 1]});
  };
  const auto w = [&](int a, int b, int c) {
    return omega.at({v[a - 1], v[b - 1], v[c - 1]});
  };
  const Complex head = w(1, 2, 4) * r(1, 2, 5) * r(3, 4, 5) -
                       w(1, 2, 3) * r(1, 2, 5) * r(3, 4, 5);
  const Complex tail = -r(1, 2, 3) * r(1, 3, 5) * r(2, 3, 4) * r(2, 4, 5) +
                       r(1, 2, 4) * r(1, 3, 4) * r(1, 3, 5) * r(2, 4, 5) +
                       r(1, 2, 4) * r(1, 4, 5) * r(2, 3, 4) * r(2, 3, 5) -
                       r(1, 2, 3) * r(1, 3, 4) * r(1, 4, 5) * r(2, 3, 5);
  return {head + tail, head - tail};
}

Complex kappa(const Cochain& omega, const SqrtChoice& s) {
  s.validate(omega, 1e-10);
  const KappaTerms k = kappa_terms(omega, s);
  double scale = 0.0;
  for (const auto& [f, root] : s.roots()) scale = std::max(scale, std::norm(root));
  if (!(std::abs(k.minus) > 1e-12 * scale * scale)) {
    throw DegenerateError("lambda_minus", "kappa denominator lambda_minus vanishes");
  }
  return k.plus / k.minus;
}

Cochain cocycle_preimage(const Cochain& omega) {
  const Simplex4 simplex = simplex_of(omega);
  const ComplexPtr complex = omega.complex();
  MatrixXc delta(10, 10);
  for (Eigen::Index b = 0; b < 10; ++b) {
    VectorXc e = VectorXc::Zero(10);
    e(b) = 1.0;
    delta.col(b) = cochain_to_vector(coboundary(cochain_from_vector(complex, 1, e)));
  }
  const VectorXc w = cochain_to_vector(omega);
  const VectorXc nu = linalg::solve_least_squares(delta, w);
  if ((delta * nu - w).cwiseAbs().maxCoeff() > 1e-8 * std::max(w.cwiseAbs().maxCoeff(), 1e-300)) {
    throw InvalidInput("omega is not a cocycle on " + std::to_string(simplex[0]) + "..");
  }
  return cochain_from_vector(complex, 1, nu);
}

namespace {

// Null vectors of the vertex-coboundary and nu rows on the six edges of t.
MatrixXc rank_condition_kernel(const Cochain& nu, const Tet& t) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) edges.push_back({t[a], t[b]});
  }
  MatrixXc r(5, 6);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 6; ++j) {
      const Edge& e = edges[static_cast<std::size_t>(j)];
      r(i, j) = (e[1] == t[i] ? 1.0 : 0.0) - (e[0] == t[i] ? 1.0 : 0.0);
    }
  }
  for (Eigen::Index j = 0; j < 6; ++j) r(4, j) = nu.at(key_of(edges[static_cast<std::size_t>(j)]));
  const MatrixXc kernel = linalg::nullspace(r);
  if (kernel.cols() != 2) {
    throw DegenerateError("kappa_rank", "rank condition kernel has dimension " +
                                            std::to_string(kernel.cols()));
  }
  return kernel;
}

Complex kappa_ratio_with(const Cochain& nu, const std::map<Edge, Complex>& alpha,
                         const Simplex4& simplex, const Tet& u, const Tet& v,
                         const Tet& t) {
  const MatrixXc kernel = rank_condition_kernel(nu, t);
  const auto au = flip_through(alpha, opposite_vertex(simplex, u), nullptr);
  const auto av = flip_through(alpha, opposite_vertex(simplex, v), nullptr);
  VectorXc a(6), b(6);
  Eigen::Index j = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = p + 1; q < 4; ++q) {
      a(j) = au.at({t[p], t[q]});
      b(j) = av.at({t[p], t[q]});
      ++j;
    }
  }
  const VectorXc num = kernel.transpose() * a;
  const VectorXc den = kernel.transpose() * b;
  Eigen::Index c = 0;
  const double best = den.cwiseAbs().maxCoeff(&c);
  if (!(best > 1e-12 * std::max(b.cwiseAbs().maxCoeff(), 1e-300))) {
    throw DegenerateError("kappa_denominator", "kappa-type ratio has a vanishing denominator");
  }
  return num(c) / den(c);
}

}  // namespace

Complex kappa_ratio(const Cochain& omega, const SqrtChoice& s, const Tet& u,
                    const Tet& v, const Tet& t) {
  const Simplex4 simplex = simplex_of(omega);
  require_tet(simplex, u);
  require_tet(simplex, v);
  require_tet(simplex, t);
  return kappa_ratio_with(cocycle_preimage(omega), alpha_coefficients(omega, s),
                          simplex, u, v, t);
}

Complex direct_component_ratio(const EdgeOperatorFamily& fam,
                               const Cochain& omega, const SqrtChoice& s,
                               const Tet& u, const Tet& v, const Tet& t) {
  const LinearOperator fu = build_f_t(fam, omega, s, u).f;
  const LinearOperator fv = build_f_t(fam, omega, s, v).f;
  const std::size_t g = fam.space->require_index(t);
  const Complex den = dominant(fv, g);
  if (den == Complex{}) {
    throw DegenerateError("kappa_denominator", "f^(v) vanishes on t");
  }
  const auto [bv, cv] = fv.component_at(g);
  const auto [bu, cu] = fu.component_at(g);
  return std::abs(bv) >= std::abs(cv) ? bu / bv : cu / cv;
}

Reconstruction reconstruct_F_detailed(const Cochain& omega,
                                      const std::optional<SqrtChoice>& s) {
  const Simplex4 simplex = simplex_of(omega);
  const SqrtChoice roots = s ? *s : SqrtChoice::principal(omega);
  const auto alpha = alpha_coefficients(omega, roots);
  const Cochain nu = cocycle_preimage(omega);

  // h(u, t) = f^(u)|_t / f^(ref)|_t, ref the first row other than t. Up to
  // row and column scalings h is F off the diagonal.
  Mat5 h = Mat5::Zero();
  try {
    for (std::size_t t = 0; t < 5; ++t) {
      const std::size_t ref = t == 0 ? 1 : 0;
      for (std::size_t u = 0; u < 5; ++u) {
        if (u == t) continue;
        h(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(t)) =
            u == ref ? Complex{1.0}
                     : kappa_ratio_with(nu, alpha, simplex, tet_omitting(simplex, u),
                                        tet_omitting(simplex, ref),
                                        tet_omitting(simplex, t));
      }
    }
  } catch (const DegenerateError&) {
    // Report the closed-form denominator when that is what vanished.
    kappa(omega, roots);
    throw;
  }
  const double hmax = h.cwiseAbs().maxCoeff();
  for (Eigen::Index u = 0; u < 5; ++u) {
    for (Eigen::Index t = 0; t < 5; ++t) {
      if (u != t && !(std::abs(h(u, t)) > 1e-12 * hmax)) {
        throw DegenerateError("kappa_ratio", "a kappa-type ratio vanishes");
      }
    }
  }
  // Row scalings making h skew.
  Mat5 f0 = h;
  for (Eigen::Index j = 1; j < 5; ++j) f0.row(j) *= -h(0, j) / h(j, 0);
  // Gauge fix: unit entries along the odd cycle 0-1-2-3-4-0.
  std::array<Complex, 5> p{};
  for (std::size_t i = 0; i < 5; ++i) {
    p[i] = 1.0 / f0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>((i + 1) % 5));
  }
  std::array<Complex, 5> lam{};
  lam[0] = std::sqrt(p[0] * p[2] * p[4] / (p[1] * p[3]));
  for (std::size_t i = 0; i < 4; ++i) lam[i + 1] = p[i] / lam[i];
  Mat5 f = Mat5::Zero();
  for (Eigen::Index a = 0; a < 5; ++a) {
    for (Eigen::Index b = 0; b < 5; ++b) {
      if (a != b) f(a, b) = lam[a] * f0(a, b) * lam[b];
    }
  }
  const double skew = (f + f.transpose()).cwiseAbs().maxCoeff() /
                      std::max(f.cwiseAbs().maxCoeff(), 1e-300);
  if (!(skew < 1e-6)) {
    throw ConsistencyError("kappa ratios do not assemble into a skew matrix");
  }
  const Mat5 skew_part = 0.5 * (f - f.transpose());
  return {WeightMatrix(simplex, skew_part), skew};
}

WeightMatrix reconstruct_F(const Cochain& omega,
                           const std::optional<SqrtChoice>& s) {
  return reconstruct_F_detailed(omega, s).F;
}

}  // namespace p33
