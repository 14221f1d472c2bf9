#include <doctest.h>

#include "p33/errors.hpp"
#include "p33/random.hpp"
#include "p33/simplicial.hpp"

using namespace p33;

TEST_CASE("face counts") {
  const auto s = SimplexComplex::simplex({1, 2, 3, 4, 5});
  CHECK(s->edges().size() == 10);
  CHECK(s->faces().size() == 10);
  CHECK(s->tetrahedra().size() == 5);
  const auto b = SimplexComplex::boundary_of_5_simplex();
  CHECK(b->top_simplices().size() == 6);
  CHECK(b->edges().size() == 15);
  CHECK(b->faces().size() == 20);
  CHECK(b->tetrahedra().size() == 15);
}

TEST_CASE("delta of delta vanishes") {
  Rng rng(2);
  const auto b = SimplexComplex::boundary_of_5_simplex();
  Cochain c(b, 0);
  for (int v : b->vertices()) c.set({v}, rng.in_disc());
  const Cochain dd = coboundary(coboundary(c));
  CHECK(dd.max_abs() <= 1e-14);
  CHECK(is_cocycle(random_cocycle(rng, b), 1e-12));
}

TEST_CASE("coboundary orientation") {
  const auto s = SimplexComplex::simplex({1, 2, 3, 4, 5});
  const Cochain d = coboundary(Cochain::indicator(s, 2));
  CHECK(d.at({1, 2}) == Complex(1.0));
  CHECK(d.at({2, 3}) == Complex(-1.0));
  CHECK(d.at({3, 4}) == Complex(0.0));
  Cochain nu(s, 1);
  nu.set({1, 2}, 1.0);
  const Cochain w = coboundary(nu);
  // (delta nu)_{ijk} = nu_jk - nu_ik + nu_ij
  CHECK(w.at({1, 2, 3}) == Complex(1.0));
  CHECK(w.at({1, 2, 5}) == Complex(1.0));
  CHECK(w.at({1, 3, 4}) == Complex(0.0));
}

TEST_CASE("a non-cocycle is detected") {
  const auto s = SimplexComplex::simplex({1, 2, 3, 4, 5});
  Cochain w(s, 2);
  w.set({1, 2, 3}, 1.0);
  CHECK_FALSE(is_cocycle(w, 1e-12));
  CHECK(cocycle_residual(w) == doctest::Approx(1.0));
}

TEST_CASE("star tetrahedra and omissions") {
  const Simplex4 s{1, 2, 3, 4, 5};
  const auto star = star_tetrahedra({1, 2}, s);
  CHECK(star == std::vector<Tet>{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}});
  CHECK(tet_omitting(s, 0) == Tet{2, 3, 4, 5});
  CHECK(tet_omitting(s, 4) == Tet{1, 2, 3, 4});
}

TEST_CASE("permutation sign") {
  const int a[] = {1, 2, 3};
  const int b[] = {2, 1, 3};
  const int c[] = {3, 1, 2};
  CHECK(permutation_sign(a) == 1);
  CHECK(permutation_sign(b) == -1);
  CHECK(permutation_sign(c) == 1);
}

TEST_CASE("cochain access outside the complex throws") {
  const auto s = SimplexComplex::simplex({1, 2, 3, 4, 5});
  Cochain w(s, 2);
  CHECK_THROWS_AS(w.at({1, 2, 6}), InvalidInput);
  CHECK_THROWS_AS(w.set({1, 2}, 1.0), InvalidInput);
}
