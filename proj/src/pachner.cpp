#include "p33/pachner.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <string>

#include "p33/cocycle2weight.hpp"
#include "p33/errors.hpp"
#include "p33/weights.hpp"

namespace p33 {
namespace {

using linalg::MatrixXc;

bool subset(const auto& small, const auto& big) {
  return std::all_of(small.begin(), small.end(), [&](int v) {
    return std::find(big.begin(), big.end(), v) != big.end();
  });
}

std::string tet_str(const Tet& t) {
  std::string s;
  for (int v : t) s += std::to_string(v);
  return s;
}

std::vector<Edge> tet_edges(const Tet& t) {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) out.push_back({t[a], t[b]});
  }
  return out;
}

const Mat2& swap_matrix() {
  static const Mat2 p = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();
  return p;
}

Mat2 sigma_of(bool inner) {
  Mat2 s = Mat2::Identity();
  if (inner) s(1, 1) = -1.0;
  return s;
}

// (beta_t, gamma_t) of the six edge operators of t, scaled.
Eigen::Matrix<Complex, 6, 2> components(const EdgeOperatorFamily& fam,
                                        const Tet& t, Complex scale) {
  Eigen::Matrix<Complex, 6, 2> m;
  const std::size_t g = fam.space->require_index(t);
  Eigen::Index r = 0;
  for (const Edge& e : tet_edges(t)) {
    const auto [b, c] = fam.at(e).component_at(g);
    m(r, 0) = scale * b;
    m(r, 1) = scale * c;
    ++r;
  }
  return m;
}

// L with L a_i = b_i for the rows a_i of a and b_i of b; residual relative.
Mat2 fit_map(const Eigen::Matrix<Complex, 6, 2>& a,
             const Eigen::Matrix<Complex, 6, 2>& b, double* residual) {
  const MatrixXc x = linalg::solve_least_squares(a, b);
  if (residual) {
    *residual = (a * x - b).cwiseAbs().maxCoeff() /
                std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  }
  return x.transpose();
}

const Mat2& form_j() {
  static const Mat2 j = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();
  return j;
}

// |G^T J G - J| entrywise, each entry relative to the norms of the two
// columns it pairs, so a diagonal gauge diag(s, 1/s) is judged at rounding
// level for any s.
double orthogonality_residual(const Mat2& g) {
  const Mat2 d = g.transpose() * form_j() * g - form_j();
  const double n0 = g.col(0).norm(), n1 = g.col(1).norm();
  const double n[2] = {n0, n1};
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      worst = std::max(worst, std::abs(d(i, j)) / std::max(n[i] * n[j], 1e-300));
    }
  }
  return worst;
}

GrassmannElement transform_weight(GrassmannElement w, const Mat2& g,
                                  std::size_t generator, bool interchange) {
  std::vector<Complex> factors(w.num_generators(), 1.0);
  if (interchange) {
    LinearOperator d = LinearOperator::derivative(w.space(), generator);
    d.set_gamma(generator, -1.0);
    w = apply(d, w);
    factors[generator] = g(1, 0);
  } else {
    factors[generator] = g(1, 1);
  }
  return rescale_generators(w, factors);
}

}  // namespace

const char* side_name(Side s) { return s == Side::kLhs ? "lhs" : "rhs"; }

bool TetGauge::interchange(std::size_t which) const {
  const Mat2& m = g.at(which);
  return std::abs(m(0, 0)) + std::abs(m(1, 1)) < std::abs(m(0, 1)) + std::abs(m(1, 0));
}

Complex TetGauge::scale(std::size_t which) const {
  const Mat2& m = g.at(which);
  return interchange(which) ? m(1, 0) : m(1, 1);
}

PachnerScene::PachnerScene() {
  complex_ = SimplexComplex::boundary_of_5_simplex();
  for (std::size_t u = 0; u < 6; ++u) {
    const FaceKey& s = complex_->top_simplices()[u];
    std::copy_n(s.begin(), 5, simplices_[u].begin());
  }
  inner_lhs_ = {{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 3, 6}}};
  inner_rhs_ = {{{1, 4, 5, 6}, {2, 4, 5, 6}, {3, 4, 5, 6}}};
  std::vector<Tet> boundary;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const Simplex4& a = simplices_[r];
      const Simplex4& b = simplices_[3 + c];
      Tet t{};
      std::size_t n = 0;
      for (int v : a) {
        if (std::find(b.begin(), b.end(), v) != b.end()) t[n++] = v;
      }
      table_[r][c] = t;
      boundary.push_back(t);
    }
  }
  tets_ = complex_->tetrahedra();
  boundary_space_ = GeneratorSpace::make(boundary);
  std::vector<Tet> lhs = boundary, rhs = boundary;
  lhs.insert(lhs.end(), inner_lhs_.begin(), inner_lhs_.end());
  rhs.insert(rhs.end(), inner_rhs_.begin(), inner_rhs_.end());
  lhs_space_ = GeneratorSpace::make(lhs);
  rhs_space_ = GeneratorSpace::make(rhs);
}

const PachnerScene& PachnerScene::standard() {
  static const PachnerScene scene;
  return scene;
}

std::array<std::size_t, 3> PachnerScene::side_simplices(Side s) const {
  return s == Side::kLhs ? std::array<std::size_t, 3>{0, 1, 2}
                         : std::array<std::size_t, 3>{3, 4, 5};
}

const std::array<Tet, 3>& PachnerScene::inner(Side s) const {
  return s == Side::kLhs ? inner_lhs_ : inner_rhs_;
}

const SpacePtr& PachnerScene::side_space(Side s) const {
  return s == Side::kLhs ? lhs_space_ : rhs_space_;
}

bool PachnerScene::is_inner(const Tet& t) const {
  return std::find(inner_lhs_.begin(), inner_lhs_.end(), t) != inner_lhs_.end() ||
         std::find(inner_rhs_.begin(), inner_rhs_.end(), t) != inner_rhs_.end();
}

bool PachnerScene::is_boundary(const Tet& t) const {
  return boundary_space_->index_of(t).has_value();
}

std::array<std::size_t, 2> PachnerScene::owners(const Tet& t) const {
  std::array<std::size_t, 2> out{};
  std::size_t n = 0;
  for (std::size_t u = 0; u < 6; ++u) {
    if (subset(t, simplices_[u])) {
      if (n == 2) throw InvalidInput("tetrahedron in more than two simplices");
      out[n++] = u;
    }
  }
  if (n != 2) throw InvalidInput("tetrahedron " + tet_str(t) + " not shared");
  return out;
}

int PachnerScene::sign_walk_count(const Face& f) const {
  int count = 0;
  for (const Tet& t : tets_) {
    if (!subset(f, t)) continue;
    count += is_inner(t) ? 2 : 1;
  }
  return count;
}

Cochain restrict_cocycle(const Cochain& omega, const Simplex4& u) {
  return omega.restricted(SimplexComplex::simplex(u));
}

ReconciledWeights reconcile(const Cochain& omega, double tol) {
  const PachnerScene& scene = PachnerScene::standard();
  if (omega.degree() != 2) throw InvalidInput("reconcile needs a 2-cochain");

  std::vector<WeightMatrix> fs;
  std::vector<EdgeOperatorFamily> fams;
  for (const Simplex4& u : scene.simplices()) {
    const WeightMatrix f = reconstruct_F(restrict_cocycle(omega, u));
    fs.push_back(apply_gauge_to_F(f, balancing_gauge(f)));
    fams.push_back(normalize_family(fs.back()));
  }

  // Simplex scales along a spanning tree of the shared-tetrahedron graph.
  std::array<Complex, 6> c{};
  std::array<bool, 6> reached{};
  c[0] = 1.0;
  reached[0] = true;
  std::vector<Tet> tree;
  for (std::size_t added = 1; added < 6; ++added) {
    bool grew = false;
    for (const Tet& t : scene.tetrahedra()) {
      const auto [u1, u2] = scene.owners(t);
      if (reached[u1] == reached[u2]) continue;
      const std::size_t a = reached[u1] ? u1 : u2;
      const std::size_t b = reached[u1] ? u2 : u1;
      const double eps = scene.is_inner(t) ? -1.0 : 1.0;
      const Mat2 l = fit_map(components(fams[b], t, 1.0),
                             components(fams[a], t, c[a]), nullptr);
      const Complex r = (l.transpose() * form_j() * l)(0, 1);
      if (std::abs(r) == 0.0) {
        throw DegenerateError("partial_product", "shared tetrahedron " + tet_str(t) +
                                                     " has a degenerate identification");
      }
      c[b] = std::sqrt(eps * r);
      reached[b] = true;
      tree.push_back(t);
      grew = true;
      break;
    }
    if (!grew) throw ConsistencyError("shared-tetrahedron graph is disconnected");
  }

  ReconciledWeights rw;
  for (const Tet& t : scene.tetrahedra()) {
    TetGauge g;
    g.tet = t;
    g.owners = scene.owners(t);
    g.in_tree = std::find(tree.begin(), tree.end(), t) != tree.end();
    const auto [u1, u2] = g.owners;
    const Mat2 sigma = sigma_of(scene.is_inner(t));
    const auto first = components(fams[u1], t, c[u1]);
    const auto second = components(fams[u2], t, c[u2]);
    g.g[1] = sigma * fit_map(second, first, nullptr);
    g.fit_residual = (second * g.g[1].transpose() - first * sigma.transpose())
                         .cwiseAbs().maxCoeff() /
                     std::max(first.cwiseAbs().maxCoeff(), 1e-300);
    g.orthogonality_residual = orthogonality_residual(g.g[1]);
    rw.gauges.push_back(g);
  }

  // Each simplex must see an even number of interchanges; pair the odd ones
  // through their shared tetrahedron and swap that frame on both sides.
  const auto parity = [&](std::size_t u) {
    int n = 0;
    for (const TetGauge& g : rw.gauges) {
      for (std::size_t w = 0; w < 2; ++w) {
        if (g.owners[w] == u && g.interchange(w)) ++n;
      }
    }
    return n % 2;
  };
  std::vector<std::size_t> odd;
  for (std::size_t u = 0; u < 6; ++u) {
    if (parity(u)) odd.push_back(u);
  }
  if (odd.size() % 2 != 0) {
    throw ConsistencyError("odd total interchange parity among the six simplices");
  }
  for (std::size_t i = 0; i < odd.size(); i += 2) {
    for (TetGauge& g : rw.gauges) {
      if (g.owners == std::array<std::size_t, 2>{odd[i], odd[i + 1]}) {
        const Mat2 sigma = sigma_of(scene.is_inner(g.tet));
        g.g[0] = swap_matrix() * g.g[0];
        g.g[1] = sigma * swap_matrix() * sigma * g.g[1];
      }
    }
  }

  for (const TetGauge& g : rw.gauges) {
    rw.max_loop_residual = std::max(rw.max_loop_residual, g.residual());
    rw.interchange_count += g.interchange(0) + g.interchange(1);
  }
  if (!(rw.max_loop_residual <= tol)) {
    for (const TetGauge& g : rw.gauges) {
      if (!(g.residual() <= tol)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", g.residual());
        throw ConsistencyError(std::string("consistency residual ") + buf +
                               " at tetrahedron " + tet_str(g.tet) +
                               (g.in_tree ? " (tree)" : " (loop)"));
      }
    }
  }

  for (std::size_t u = 0; u < 6; ++u) {
    ReconciledSimplex rs{scene.simplices()[u], fs[u], fams[u], c[u],
                         gaussian_weight(fs[u]), {}, std::nullopt};
    bool any_interchange = false;
    Mat5 b = Mat5::Zero();
    std::map<std::size_t, Mat2> frame;  // generator -> gauge
    for (const TetGauge& g : rw.gauges) {
      for (std::size_t w = 0; w < 2; ++w) {
        if (g.owners[w] != u) continue;
        const std::size_t gen = fams[u].space->require_index(g.tet);
        frame[gen] = g.g[w];
        const bool inter = g.interchange(w);
        any_interchange |= inter;
        rs.weight = transform_weight(rs.weight, g.g[w], gen, inter);
        const auto row = static_cast<Eigen::Index>(WeightMatrix::row_of_generator(gen));
        b(row, row) = g.g[w](1, 1);
      }
    }
    for (const auto& [e, d] : fams[u].operators) {
      LinearOperator out(d.space());
      for (const auto& [gen, m] : frame) {
        const auto [beta, gamma] = d.component_at(gen);
        const Eigen::Vector2cd v = m * (c[u] * Eigen::Vector2cd(beta, gamma));
        out.set_component(gen, {v(0), v(1)});
      }
      rs.operators.emplace(e, std::move(out));
    }
    if (!any_interchange) {
      rs.global_F = WeightMatrix(rs.simplex, b * fs[u].entries() * b, 1e-8);
    }
    rw.simplices.push_back(std::move(rs));
  }
  return rw;
}

namespace {

// Simplex of the side containing t (boundary or inner of that side).
std::vector<std::size_t> side_owners(const PachnerScene& scene, Side side,
                                     const Tet& t) {
  std::vector<std::size_t> out;
  for (std::size_t u : scene.side_simplices(side)) {
    if (subset(t, scene.simplices()[u])) out.push_back(u);
  }
  return out;
}

double inner_mismatch(const ReconciledWeights& rw, Side side, const Edge& edge) {
  const PachnerScene& scene = PachnerScene::standard();
  double worst = 0.0;
  for (const Tet& t : scene.inner(side)) {
    const auto own = side_owners(scene, side, t);
    std::array<std::pair<Complex, Complex>, 2> comp{};
    double scale = 0.0;
    for (std::size_t w = 0; w < 2; ++w) {
      const ReconciledSimplex& rs = rw.simplices[own[w]];
      auto it = rs.operators.find(edge);
      if (it == rs.operators.end()) continue;
      comp[w] = it->second.component_at(rs.local_family.space->require_index(t));
      scale = std::max(scale, it->second.max_abs());
    }
    if (scale == 0.0) continue;
    const double diff = std::max(std::abs(comp[0].first - comp[1].first),
                                 std::abs(comp[0].second + comp[1].second));
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

}  // namespace

LinearOperator compose_edge_operator(const ReconciledWeights& rw, Side side,
                                     const Edge& edge, double tol) {
  const PachnerScene& scene = PachnerScene::standard();
  const SpacePtr& space = scene.boundary_space();
  bool found = false;
  LinearOperator d(space);
  for (std::size_t g = 0; g < space->size(); ++g) {
    const Tet& t = space->label(g);
    for (std::size_t u : side_owners(scene, side, t)) {
      const ReconciledSimplex& rs = rw.simplices[u];
      auto it = rs.operators.find(edge);
      if (it == rs.operators.end()) continue;
      found = true;
      d.set_component(g, it->second.component_at(rs.local_family.space->require_index(t)));
    }
  }
  if (!found) throw InvalidInput("edge not in any simplex of the side");
  const double mismatch = inner_mismatch(rw, side, edge);
  if (!(mismatch <= tol)) {
    throw ConsistencyError("inner-tetrahedron agreement violated for edge " +
                           std::to_string(edge[0]) + std::to_string(edge[1]) +
                           ": " + std::to_string(mismatch));
  }
  return d;
}

double inner_agreement_residual(const ReconciledWeights& rw, Side side) {
  double worst = 0.0;
  for (const Edge& e : PachnerScene::standard().complex()->edges()) {
    worst = std::max(worst, inner_mismatch(rw, side, e));
  }
  return worst;
}

GrassmannElement side_weight(const ReconciledWeights& rw, Side side) {
  const PachnerScene& scene = PachnerScene::standard();
  const SpacePtr& space = scene.side_space(side);
  GrassmannElement product = GrassmannElement::scalar(space, 1.0);
  for (std::size_t u : scene.side_simplices(side)) {
    product = multiply(product, rw.simplices[u].weight.embed(space));
  }
  std::vector<std::size_t> vars;
  for (const Tet& t : scene.inner(side)) vars.push_back(space->require_index(t));
  return berezin_integral(product, vars).restrict_to(scene.boundary_space());
}

Verify33 verify_33(const GrassmannElement& lhs, const GrassmannElement& rhs) {
  Mask best = 0;
  double best_abs = 0.0;
  for (Mask m = 0; m < rhs.dimension(); ++m) {
    if (std::abs(rhs.coeff(m)) > best_abs) {
      best_abs = std::abs(rhs.coeff(m));
      best = m;
    }
  }
  if (best_abs == 0.0) throw DegenerateError("rhs", "r.h.s. of the 3-3 relation vanishes");
  Verify33 v;
  v.constant = lhs.coeff(best) / rhs.coeff(best);
  double worst = 0.0;
  for (Mask m = 0; m < lhs.dimension(); ++m) {
    worst = std::max(worst, std::abs(lhs.coeff(m) - v.constant * rhs.coeff(m)));
  }
  v.max_residual = worst / std::max(lhs.max_abs(), 1e-300);
  return v;
}

Verify33 verify_33(const ReconciledWeights& rw) {
  return verify_33(side_weight(rw, Side::kLhs), side_weight(rw, Side::kRhs));
}

PachnerReport run_pachner(const Cochain& omega, double tol) {
  const PachnerScene& scene = PachnerScene::standard();
  const ReconciledWeights rw = reconcile(omega, tol);
  PachnerReport rep;
  rep.gauges = rw.gauges;
  rep.max_loop_residual = rw.max_loop_residual;
  const GrassmannElement lhs = side_weight(rw, Side::kLhs);
  const GrassmannElement rhs = side_weight(rw, Side::kRhs);
  rep.verification = verify_33(lhs, rhs);

  const OperatorSubspace al = annihilator_of(lhs);
  const OperatorSubspace ar = annihilator_of(rhs);
  rep.lhs_annihilator_dim = static_cast<int>(al.dimension());
  rep.rhs_annihilator_dim = static_cast<int>(ar.dimension());
  rep.lhs_isotropy = al.isotropy_residual();
  rep.rhs_isotropy = ar.isotropy_residual();
  rep.annihilator_angle = max_principal_angle(al, ar);

  const auto& edges = scene.complex()->edges();
  MatrixXc ml(static_cast<Eigen::Index>(edges.size()), 18);
  MatrixXc mr(static_cast<Eigen::Index>(edges.size()), 18);
  Eigen::Index r = 0;
  for (const Edge& e : edges) {
    const LinearOperator dl = compose_edge_operator(rw, Side::kLhs, e, tol);
    const LinearOperator dr = compose_edge_operator(rw, Side::kRhs, e, tol);
    ml.row(r) = dl.coefficients().transpose();
    mr.row(r) = dr.coefficients().transpose();
    const double scale = std::max({dl.max_abs(), dr.max_abs(), 1e-300});
    rep.composed_agreement = std::max(
        rep.composed_agreement, (ml.row(r) - mr.row(r)).cwiseAbs().maxCoeff() / scale);
    rep.composed_annihilation = std::max(
        {rep.composed_annihilation,
         apply(dl, lhs).max_abs() / (dl.max_abs() * lhs.max_abs()),
         apply(dr, rhs).max_abs() / (dr.max_abs() * rhs.max_abs())});
    ++r;
  }
  rep.composed_rank_lhs = linalg::numeric_rank(ml);
  rep.composed_rank_rhs = linalg::numeric_rank(mr);
  return rep;
}

}  // namespace p33
