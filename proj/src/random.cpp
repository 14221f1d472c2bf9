#include "p33/random.hpp"

#include <cmath>
#include <numbers>

#include "p33/edgeops.hpp"
#include "p33/errors.hpp"

namespace p33 {

Complex Rng::in_disc(double radius) {
  const double r = radius * std::sqrt(uniform());
  const double th = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, th);
}

Complex Rng::in_annulus(double rmin, double rmax) {
  const double r = std::sqrt(uniform(rmin * rmin, rmax * rmax));
  const double th = 2.0 * std::numbers::pi * uniform();
  return std::polar(r, th);
}

Complex Rng::in_box(double half_width) {
  const double re = uniform(-half_width, half_width);
  const double im = uniform(-half_width, half_width);
  return {re, im};
}

std::map<Face, Complex> random_phi(Rng& rng, const Simplex4& simplex,
                                   double min_abs) {
  std::map<Face, Complex> phi;
  for (const Face& f : simplex_faces(simplex)) {
    Complex z;
    do {
      z = rng.in_disc();
    } while (std::abs(z) < min_abs);
    phi[f] = z;
  }
  return phi;
}

WeightMatrix random_F(Rng& rng, const Simplex4& simplex) {
  return WeightMatrix::from_phi(simplex, random_phi(rng, simplex));
}

Cochain random_1_cochain(Rng& rng, const ComplexPtr& complex) {
  Cochain nu(complex, 1);
  for (const Edge& e : complex->edges()) nu.set(key_of(e), rng.in_annulus(0.5, 1.5));
  return nu;
}

Cochain random_cocycle(Rng& rng, const ComplexPtr& complex) {
  return coboundary(random_1_cochain(rng, complex));
}

EllipticParams random_elliptic(Rng& rng, const std::vector<int>& vertices,
                               double min_separation) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Complex k = std::polar(rng.uniform(0.2, 0.8),
                                 rng.uniform(-0.5, 0.5));
    std::map<int, Complex> coords;
    bool spread = true;
    for (int v : vertices) {
      const Complex x = rng.in_box(1.0);
      for (const auto& [w, y] : coords) spread = spread && std::abs(x - y) >= min_separation;
      coords[v] = x;
    }
    if (!spread) continue;
    try {
      return EllipticParams(k, coords);
    } catch (const InvalidInput&) {
    }
  }
  throw NumericError("could not draw admissible elliptic parameters");
}

}  // namespace p33
