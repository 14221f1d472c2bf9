#include <doctest.h>

#include "p33/edgeops.hpp"
#include "p33/errors.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"

using namespace p33;

namespace {

constexpr Simplex4 kS{1, 2, 3, 4, 5};

std::map<Face, Complex> fixed_phi() {
  const Complex v[10] = {{0.7, 0.2},  {-0.3, 0.5}, {0.4, -0.6}, {0.9, 0.1}, {-0.5, -0.4},
                         {0.2, 0.8},  {-0.8, 0.3}, {0.6, 0.6},  {0.3, -0.9}, {-0.6, 0.7}};
  std::map<Face, Complex> phi;
  int i = 0;
  for (int a = 1; a <= 5; ++a)
    for (int b = a + 1; b <= 5; ++b)
      for (int c = b + 1; c <= 5; ++c) phi[{a, b, c}] = v[i++];
  return phi;
}

}  // namespace

TEST_CASE("edge operators live on the star and kill the weight") {
  Rng rng(21);
  const WeightMatrix f = random_F(rng, kS);
  const GrassmannElement w = gaussian_weight(f);
  for (const Edge& e : simplex_edges(kS)) {
    const LinearOperator d = raw_edge_operator(f, e);
    CHECK(d.max_abs() == doctest::Approx(1.0));
    CHECK(apply(d, w).max_abs() <= 1e-11 * w.max_abs());
    const auto star = star_tetrahedra(e, kS);
    for (std::size_t g : d.support()) {
      CHECK(std::find(star.begin(), star.end(), f.space()->label(g)) != star.end());
    }
  }
}

TEST_CASE("edge 12 matches the explicit formula") {
  const WeightMatrix f = WeightMatrix::from_phi(kS, fixed_phi());
  CHECK(proportionality_residual(raw_edge_operator(f, {1, 2}).coefficients(),
                                 explicit_edge12_operator(f).coefficients()) <= 1e-12);
}

TEST_CASE("normalized family: vertex coboundaries vanish") {
  Rng rng(22);
  const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
  CHECK(fam.normalized);
  CHECK(fam.operators.size() == 10);
  CHECK(vertex_coboundary_residual(fam) <= 1e-10);
}

TEST_CASE("W-cocycle of a fixed F, frozen") {
  const Cochain w = extract_w_cocycle(normalize_family(WeightMatrix::from_phi(kS, fixed_phi())));
  const std::pair<Face, Complex> want[] = {
      {{1, 2, 3}, {-0.021886784771277208, -0.050068597636160686}},
      {{1, 2, 4}, {0.020116259556545467, -0.08732820664498248}},
      {{1, 2, 5}, {1.0, 0.0}},
      {{1, 3, 4}, {0.03484224861944749, 0.17577626134521426}},
      {{1, 3, 5}, {0.6977068097270951, 0.20050940861010666}},
      {{1, 4, 5}, {0.3435683127219139, -0.6380434984629716}},
      {{2, 3, 4}, {-0.0071607957083751695, 0.21303587035403604}},
      {{2, 3, 5}, {-0.32417997504418206, 0.15044081097394593}},
      {{2, 4, 5}, {-0.6363154277215407, -0.725371705107954}},
      {{3, 4, 5}, {-0.3192962483857337, -0.662776645727864}}};
  for (const auto& [face, value] : want) {
    CHECK(std::abs(w.at(key_of(face)) - value) <= 1e-12);
  }
  CHECK(cocycle_residual(w) <= 1e-12);
}

TEST_CASE("W-cocycle is independent of the kernel representative") {
  Rng rng(23);
  const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
  const WExtraction ex = extract_nu_and_w(fam);
  Cochain shifted = ex.nu;
  const Cochain db = coboundary(Cochain::indicator(ex.nu.complex(), 3));
  for (const auto& [k, v] : db.values()) shifted.set(k, shifted.at(k) + 0.37 * v);
  CHECK(proportionality_residual(cochain_to_vector(coboundary(shifted)),
                                 cochain_to_vector(ex.omega)) <= 1e-10);
}

TEST_CASE("non-generic F is reported") {
  CHECK_THROWS_AS(normalize_family(WeightMatrix::zero(kS)), DegenerateError);
}
