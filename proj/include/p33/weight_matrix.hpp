#pragma once

#include <map>

#include <Eigen/Dense>

#include "p33/grassmann.hpp"
#include "p33/simplicial.hpp"

namespace p33 {

using Mat5 = Eigen::Matrix<Complex, 5, 5>;

/// Skew-symmetric 5x5 matrix F of a 4-simplex Gaussian weight. Row and column
/// k correspond to the tetrahedron omitting the k-th vertex of the (sorted)
/// simplex, i.e. the order 2345, 1345, 1245, 1235, 1234 for 12345. Entry
/// (k, l), k < l, equals (-1)^(k+l) phi_s where s is the 2-face made of the
/// three remaining vertices.
class WeightMatrix {
 public:
  WeightMatrix(Simplex4 simplex, const Mat5& entries, double skew_tol = 1e-12);

  static WeightMatrix zero(Simplex4 simplex);
  static WeightMatrix from_phi(Simplex4 simplex,
                               const std::map<Face, Complex>& phi);

  const Simplex4& simplex() const noexcept { return simplex_; }
  const Mat5& entries() const noexcept { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row),
                    static_cast<Eigen::Index>(col));
  }

  Complex phi(const Face& face) const;
  std::map<Face, Complex> phis() const;

  // The five generators of this simplex, lexicographically ordered.
  const SpacePtr& space() const noexcept { return space_; }
  Tet tet_of_row(std::size_t k) const { return tet_omitting(simplex_, k); }
  // Lexicographic generator index of row k's tetrahedron.
  static constexpr std::size_t generator_of_row(std::size_t k) { return 4 - k; }
  static constexpr std::size_t row_of_generator(std::size_t g) { return 4 - g; }

  // Row/column position of the vertex pair (k, l) complement; used to map a
  // 2-face to its entry.
  std::pair<std::size_t, std::size_t> entry_of_face(const Face& face) const;

 private:
  Simplex4 simplex_;
  Mat5 entries_;
  SpacePtr space_;
};

// Sign (-1)^(k+l) placing phi at entry (k, l), k < l.
inline double entry_sign(std::size_t k, std::size_t l) {
  return ((k + l) % 2 == 0) ? 1.0 : -1.0;
}

SpacePtr simplex_space(const Simplex4& simplex);

}  // namespace p33
