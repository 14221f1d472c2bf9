#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "p33/elliptic.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

/// The single source of randomness: std::mt19937_64 seeded with the run seed.
/// Uniform doubles take the top 53 bits of each draw, so streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t bits() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }

  Complex in_disc(double radius = 1.0);
  // Uniform by area on rmin <= |z| <= rmax.
  Complex in_annulus(double rmin, double rmax);
  Complex in_box(double half_width);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

// Ten phi's uniform in the unit disc, redrawn while any |phi| < min_abs.
std::map<Face, Complex> random_phi(Rng& rng, const Simplex4& simplex,
                                   double min_abs = 0.05);
WeightMatrix random_F(Rng& rng, const Simplex4& simplex);

// Degree-1 cochain with values in the annulus 0.5 <= |z| <= 1.5.
Cochain random_1_cochain(Rng& rng, const ComplexPtr& complex);
// delta of random_1_cochain.
Cochain random_cocycle(Rng& rng, const ComplexPtr& complex);

// Modulus with |k| in [0.2, 0.8] and coordinates in a box of half-width 1,
// pairwise at least min_separation apart, redrawn until EllipticParams
// accepts them.
EllipticParams random_elliptic(Rng& rng, const std::vector<int>& vertices,
                               double min_separation = 0.3);

}  // namespace p33
