#include <doctest.h>

#include "p33/operators.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"

using namespace p33;

namespace {

LinearOperator random_operator(Rng& rng, const SpacePtr& s) {
  LinearOperator d(s);
  for (std::size_t t = 0; t < s->size(); ++t) {
    d.set_beta(t, rng.in_disc());
    d.set_gamma(t, rng.in_disc());
  }
  return d;
}

GrassmannElement random_element(Rng& rng, const SpacePtr& s) {
  GrassmannElement w(s);
  for (Mask m = 0; m < w.dimension(); ++m) w.set_coeff(m, rng.in_disc());
  return w;
}

}  // namespace

TEST_CASE("anticommutator of first-order operators is a scalar") {
  Rng rng(7);
  for (std::size_t n : {1u, 3u, 6u}) {
    const auto s = GeneratorSpace::indexed(n);
    for (int it = 0; it < 20; ++it) {
      const LinearOperator a = random_operator(rng, s), b = random_operator(rng, s);
      const GrassmannElement f = random_element(rng, s);
      const GrassmannElement lhs = apply(a, apply(b, f)) + apply(b, apply(a, f));
      CHECK(relative_difference(lhs, scalar_product(a, b) * f) <= 1e-11);
      Complex sum{};
      for (std::size_t t = 0; t < n; ++t) sum += partial_scalar_product(a, b, t);
      CHECK(std::abs(sum - scalar_product(a, b)) <= 1e-12 * std::max(1.0, std::abs(sum)));
    }
  }
}

TEST_CASE("d/dx and x are dual") {
  const auto s = GeneratorSpace::indexed(2);
  const auto d = LinearOperator::derivative(s, 0);
  const auto x = LinearOperator::multiplication(s, 0);
  CHECK(scalar_product(d, x) == Complex(1.0));
  CHECK(scalar_product(d, d) == Complex(0.0));
  CHECK(scalar_product(d, LinearOperator::multiplication(s, 1)) == Complex(0.0));
  CHECK(d.interchanged(0).gamma(0) == Complex(1.0));
}

TEST_CASE("isotropic span of a Gaussian weight") {
  Rng rng(8);
  const WeightMatrix f = random_F(rng, {1, 2, 3, 4, 5});
  const OperatorSubspace span = isotropic_span_from_F(f);
  CHECK(span.dimension() == 5);
  CHECK(span.isotropy_residual() <= 1e-12);
  const GrassmannElement w = gaussian_weight(f);
  const OperatorSubspace ann = annihilator_of(w);
  CHECK(ann.dimension() == 5);
  CHECK(ann.dimension() <= w.num_generators());
  CHECK(max_principal_angle(ann, span) <= 1e-8);
}

TEST_CASE("annihilator of a monomial") {
  const auto s = GeneratorSpace::indexed(3);
  // x1 x2 is killed by x1, x2 and d/dx3
  const OperatorSubspace ann = annihilator_of(GrassmannElement::monomial(s, 0b011, 1.0));
  CHECK(ann.dimension() == 3);
  CHECK_THROWS(annihilator_of(GrassmannElement(s)));
}

TEST_CASE("dependent rows are rejected") {
  const auto s = GeneratorSpace::indexed(2);
  const auto d = LinearOperator::derivative(s, 0);
  CHECK_THROWS(OperatorSubspace(s, {d, 2.0 * d}));
  linalg::MatrixXc rows(2, 4);
  rows << 1, 0, 0, 0, 2, 0, 0, 0;
  CHECK(OperatorSubspace::from_rows(s, rows).dimension() == 1);
}
