#include <doctest.h>

#include "p33/pachner.hpp"
#include "p33/weights.hpp"
#include "p33/random.hpp"
#include "p33/errors.hpp"

using namespace p33;

TEST_CASE("scene layout") {
  const PachnerScene& s = PachnerScene::standard();
  CHECK(s.simplices().size() == 6);
  CHECK(s.boundary_space()->size() == 9);
  CHECK(s.side_space(Side::kLhs)->size() == 12);
  CHECK(s.side_space(Side::kRhs)->size() == 12);
  int inner = 0;
  for (const Tet& t : s.tetrahedra()) {
    CHECK(s.is_inner(t) != s.is_boundary(t));
    inner += s.is_inner(t);
    const auto o = s.owners(t);
    CHECK(o[0] < o[1]);
  }
  CHECK(inner == 6);
  // six sign changes around 123 and 456; an even number around every face
  CHECK(s.sign_walk_count({1, 2, 3}) == 6);
  CHECK(s.sign_walk_count({4, 5, 6}) == 6);
  for (const Face& f : s.complex()->faces()) CHECK(s.sign_walk_count(f) % 2 == 0);
}

TEST_CASE("random cocycle: reconcile and verify") {
  Rng rng(51);
  const Cochain omega = random_cocycle(rng, PachnerScene::standard().complex());
  const PachnerReport r = run_pachner(omega);
  CHECK(r.max_loop_residual <= 1e-8);
  CHECK(r.composed_agreement <= 1e-8);
  CHECK(r.composed_rank_lhs == 9);
  CHECK(r.composed_rank_rhs == 9);
  CHECK(r.lhs_annihilator_dim == 9);
  CHECK(r.rhs_annihilator_dim == 9);
  CHECK(r.verification.max_residual <= 1e-8);
  CHECK(std::abs(r.verification.constant) > 1e-10);
  CHECK(r.annihilator_angle <= 1e-8);
}

TEST_CASE("boundary regauge acts on both sides alike") {
  Rng rng(52);
  const Cochain omega = random_cocycle(rng, PachnerScene::standard().complex());
  const ReconciledWeights rw = reconcile(omega);
  const GrassmannElement lhs = side_weight(rw, Side::kLhs);
  const GrassmannElement rhs = side_weight(rw, Side::kRhs);
  std::vector<Complex> scale(9);
  for (Complex& c : scale) c = rng.in_annulus(0.5, 1.5);
  const Verify33 a = verify_33(lhs, rhs);
  const Verify33 b = verify_33(rescale_generators(lhs, scale), rescale_generators(rhs, scale));
  CHECK(b.max_residual <= 1e-8);
  CHECK(std::abs(a.constant - b.constant) <= 1e-8 * std::abs(a.constant));
}

TEST_CASE("proportionality check detects unrelated sides") {
  Rng rng(53);
  const auto& scene = PachnerScene::standard();
  const ReconciledWeights a = reconcile(random_cocycle(rng, scene.complex()));
  const ReconciledWeights b = reconcile(random_cocycle(rng, scene.complex()));
  CHECK(verify_33(side_weight(a, Side::kLhs), side_weight(b, Side::kRhs)).max_residual > 1e-3);
}

TEST_CASE("inner operators agree between their two simplices") {
  Rng rng(54);
  const ReconciledWeights rw = reconcile(random_cocycle(rng, PachnerScene::standard().complex()));
  CHECK(inner_agreement_residual(rw, Side::kLhs) <= 1e-8);
  CHECK(inner_agreement_residual(rw, Side::kRhs) <= 1e-8);
}

TEST_CASE("elliptic cocycle on the boundary of the 5-simplex") {
  Rng rng(55);
  const auto& scene = PachnerScene::standard();
  const EllipticParams p = random_elliptic(rng, scene.complex()->vertices());
  const PachnerReport r = run_pachner(elliptic_cocycle(p, scene.complex()));
  CHECK(r.verification.max_residual <= 1e-8);
  CHECK(std::abs(r.verification.constant) > 1e-10);
}

TEST_CASE("a non-cocycle is refused") {
  const auto& scene = PachnerScene::standard();
  Cochain w(scene.complex(), 2);
  for (const Face& f : scene.complex()->faces()) w.set(key_of(f), 1.0);
  w.set({1, 2, 3}, 2.0);
  CHECK_THROWS(run_pachner(w));
}
