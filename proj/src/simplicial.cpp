#include "p33/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "p33/errors.hpp"

namespace p33 {
namespace {

std::string key_str(const FaceKey& k) {
  std::string s;
  for (int v : k) s += std::to_string(v) + ",";
  if (!s.empty()) s.pop_back();
  return s;
}

template <std::size_t N>
std::array<int, N> to_array(const FaceKey& k) {
  std::array<int, N> a{};
  std::copy_n(k.begin(), N, a.begin());
  return a;
}

void subsets(const FaceKey& verts, std::size_t size, std::size_t start,
             FaceKey& cur, std::set<FaceKey>& out) {
  if (cur.size() == size) {
    out.insert(cur);
    return;
  }
  for (std::size_t i = start; i < verts.size(); ++i) {
    cur.push_back(verts[i]);
    subsets(verts, size, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SimplexComplex::SimplexComplex(std::vector<FaceKey> top) : top_(std::move(top)) {
  std::set<int> verts;
  std::set<FaceKey> e, f, t;
  for (FaceKey& s : top_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidInput("simplex with repeated vertex: " + key_str(s));
    }
    verts.insert(s.begin(), s.end());
    FaceKey cur;
    subsets(s, 2, 0, cur, e);
    subsets(s, 3, 0, cur, f);
    subsets(s, 4, 0, cur, t);
  }
  std::sort(top_.begin(), top_.end());
  top_.erase(std::unique(top_.begin(), top_.end()), top_.end());
  vertices_.assign(verts.begin(), verts.end());
  for (const auto& k : e) edges_.push_back(to_array<2>(k));
  for (const auto& k : f) faces_.push_back(to_array<3>(k));
  for (const auto& k : t) tets_.push_back(to_array<4>(k));
}

ComplexPtr SimplexComplex::make(std::vector<FaceKey> top) {
  return std::make_shared<const SimplexComplex>(std::move(top));
}

ComplexPtr SimplexComplex::simplex(const Simplex4& s) {
  return make({FaceKey(s.begin(), s.end())});
}

ComplexPtr SimplexComplex::boundary_of_5_simplex() {
  std::vector<FaceKey> top;
  for (int omit = 6; omit >= 1; --omit) {
    FaceKey s;
    for (int v = 1; v <= 6; ++v) {
      if (v != omit) s.push_back(v);
    }
    top.push_back(s);
  }
  return make(std::move(top));
}

std::vector<FaceKey> SimplexComplex::faces_of_dimension(int dim) const {
  std::vector<FaceKey> out;
  switch (dim) {
    case 0:
      for (int v : vertices_) out.push_back({v});
      break;
    case 1:
      for (const auto& x : edges_) out.emplace_back(x.begin(), x.end());
      break;
    case 2:
      for (const auto& x : faces_) out.emplace_back(x.begin(), x.end());
      break;
    case 3:
      for (const auto& x : tets_) out.emplace_back(x.begin(), x.end());
      break;
    default:
      throw InvalidInput("faces_of_dimension: dim must be 0..3");
  }
  return out;
}

bool SimplexComplex::contains(const FaceKey& face) const {
  for (const FaceKey& s : top_) {
    if (std::includes(s.begin(), s.end(), face.begin(), face.end())) {
      return true;
    }
  }
  return false;
}

Cochain::Cochain(ComplexPtr complex, int degree)
    : complex_(std::move(complex)), degree_(degree) {
  if (degree < 0 || degree > 2) {
    throw InvalidInput("cochain degree must be 0, 1 or 2");
  }
  for (auto& k : complex_->faces_of_dimension(degree)) values_[k] = Complex{};
}

Cochain Cochain::indicator(ComplexPtr complex, int vertex) {
  Cochain c(std::move(complex), 0);
  c.set({vertex}, 1.0);
  return c;
}

Complex Cochain::at(const FaceKey& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw InvalidInput("cochain has no face " + key_str(key));
  }
  return it->second;
}

void Cochain::set(const FaceKey& key, Complex value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw InvalidInput("face " + key_str(key) + " not in complex");
  }
  it->second = value;
}

double Cochain::max_abs() const {
  double m = 0.0;
  for (const auto& [k, v] : values_) m = std::max(m, std::abs(v));
  return m;
}

Cochain& Cochain::operator*=(Complex s) {
  for (auto& [k, v] : values_) v *= s;
  return *this;
}

Cochain Cochain::scaled(Complex s) const {
  Cochain c = *this;
  return c *= s;
}

Cochain Cochain::restricted(ComplexPtr sub) const {
  Cochain out(sub, degree_);
  for (auto& [k, v] : out.values_) v = at(k);
  return out;
}

Cochain coboundary(const Cochain& c) {
  if (c.degree() == 0) {
    Cochain out(c.complex(), 1);
    for (const Edge& e : c.complex()->edges()) {
      out.set({e[0], e[1]}, c.at({e[1]}) - c.at({e[0]}));
    }
    return out;
  }
  if (c.degree() == 1) {
    Cochain out(c.complex(), 2);
    for (const Face& f : c.complex()->faces()) {
      const auto [i, j, k] = f;
      out.set({i, j, k}, c.at({j, k}) - c.at({i, k}) + c.at({i, j}));
    }
    return out;
  }
  throw InvalidInput("coboundary: degree-2 input not supported");
}

double cocycle_residual(const Cochain& c) {
  if (c.degree() != 2) throw InvalidInput("cocycle test needs a 2-cochain");
  const double scale = c.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (const Tet& t : c.complex()->tetrahedra()) {
    const auto [i, j, k, l] = t;
    const Complex alt = c.at({j, k, l}) - c.at({i, k, l}) + c.at({i, j, l}) -
                        c.at({i, j, k});
    worst = std::max(worst, std::abs(alt));
  }
  return worst / scale;
}

bool is_cocycle(const Cochain& c, double tol) {
  return cocycle_residual(c) <= tol;
}

int permutation_sign(std::span<const int> seq) {
  std::vector<int> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("permutation_sign: repeated entry");
  }
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) {
      if (seq[a] > seq[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::vector<Tet> star_tetrahedra(const Edge& edge, const Simplex4& simplex) {
  const auto has = [&](int v) {
    return std::find(simplex.begin(), simplex.end(), v) != simplex.end();
  };
  if (edge[0] == edge[1] || !has(edge[0]) || !has(edge[1])) {
    throw InvalidInput("star_tetrahedra: edge not in simplex");
  }
  std::vector<Tet> out;
  for (std::size_t k = 0; k < 5; ++k) {
    const int omitted = simplex[k];
    if (omitted == edge[0] || omitted == edge[1]) continue;
    out.push_back(tet_omitting(simplex, k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Tet tet_omitting(const Simplex4& simplex, std::size_t k) {
  Tet t{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i != k) t[n++] = simplex[i];
  }
  return t;
}

double relative_difference(const Cochain& a, const Cochain& b) {
  if (a.degree() != b.degree() || a.values().size() != b.values().size()) {
    throw InvalidInput("relative_difference: incompatible cochains");
  }
  double diff = 0.0;
  for (const auto& [k, v] : a.values()) diff = std::max(diff, std::abs(v - b.at(k)));
  const double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return diff / scale;
}

}  // namespace p33
