#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "p33/grassmann.hpp"

namespace p33 {

using Edge = std::array<int, 2>;
using Face = std::array<int, 3>;
using Simplex4 = std::array<int, 5>;

// Sorted vertex tuple addressing a face of any dimension.
using FaceKey = std::vector<int>;

template <std::size_t N>
FaceKey key_of(const std::array<int, N>& a) {
  return FaceKey(a.begin(), a.end());
}

/// A pure simplicial complex given by its top simplices. Faces of dimension
/// 1..3 are derived on construction, deduplicated and sorted.
class SimplexComplex {
 public:
  explicit SimplexComplex(std::vector<FaceKey> top_simplices);

  static std::shared_ptr<const SimplexComplex> make(
      std::vector<FaceKey> top_simplices);
  // The single 4-simplex on the given five vertices.
  static std::shared_ptr<const SimplexComplex> simplex(const Simplex4& s);
  // Boundary of the 5-simplex on vertices 1..6: six 4-simplices.
  static std::shared_ptr<const SimplexComplex> boundary_of_5_simplex();

  const std::vector<int>& vertices() const noexcept { return vertices_; }
  const std::vector<FaceKey>& top_simplices() const noexcept { return top_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<Tet>& tetrahedra() const noexcept { return tets_; }
  // All faces of the given dimension (0..3) as keys.
  std::vector<FaceKey> faces_of_dimension(int dim) const;
  bool contains(const FaceKey& face) const;

 private:
  std::vector<FaceKey> top_;
  std::vector<int> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<Tet> tets_;
};

using ComplexPtr = std::shared_ptr<const SimplexComplex>;

/// Complex-valued cochain of degree 0, 1 or 2. Edges and 2-faces are oriented
/// by increasing vertex order; every face of the complex has a value (zero by
/// default).
class Cochain {
 public:
  Cochain(ComplexPtr complex, int degree);

  static Cochain indicator(ComplexPtr complex, int vertex);

  int degree() const noexcept { return degree_; }
  const ComplexPtr& complex() const noexcept { return complex_; }
  const std::map<FaceKey, Complex>& values() const noexcept { return values_; }

  Complex at(const FaceKey& key) const;
  void set(const FaceKey& key, Complex value);
  double max_abs() const;

  Cochain& operator*=(Complex s);
  Cochain scaled(Complex s) const;

  // Values on the faces of a subcomplex.
  Cochain restricted(ComplexPtr sub) const;

 private:
  ComplexPtr complex_;
  int degree_;
  std::map<FaceKey, Complex> values_;
};

Cochain coboundary(const Cochain& c);

bool is_cocycle(const Cochain& c, double tol);
// Largest alternating-sum residual over the tetrahedra of the complex,
// relative to max |value|.
double cocycle_residual(const Cochain& c);

// Sign of the permutation taking increasing order to seq.
int permutation_sign(std::span<const int> seq);

// The three tetrahedra of a 4-simplex containing the given edge.
std::vector<Tet> star_tetrahedra(const Edge& edge, const Simplex4& simplex);

// Tetrahedron of a 4-simplex omitting its k-th vertex (k = 0..4).
Tet tet_omitting(const Simplex4& simplex, std::size_t k);

// Maximum |a - b| over faces divided by max(|a|, |b|).
double relative_difference(const Cochain& a, const Cochain& b);

}  // namespace p33
