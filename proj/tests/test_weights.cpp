#include <doctest.h>

#include "p33/errors.hpp"
#include "p33/operators.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"
#include "test_util.hpp"

using namespace p33;

namespace {

constexpr Simplex4 kS{1, 2, 3, 4, 5};

// Fixed phi's on the lexicographic faces 123, 124, ..., 345.
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

TEST_CASE("matrix layout") {
  const auto phi = fixed_phi();
  const WeightMatrix f = WeightMatrix::from_phi(kS, phi);
  // rows 0,1 omit vertices 1,2: complement face 345, sign -1
  CHECK(f(0, 1) == -phi.at({3, 4, 5}));
  CHECK(f(1, 0) == phi.at({3, 4, 5}));
  CHECK(f(0, 2) == phi.at({2, 4, 5}));
  CHECK(f(3, 4) == -phi.at({1, 2, 3}));
  CHECK(f.phi({1, 3, 5}) == phi.at({1, 3, 5}));
  CHECK(f.tet_of_row(1) == Tet{1, 3, 4, 5});
  CHECK(f.space()->label(WeightMatrix::generator_of_row(1)) == Tet{1, 3, 4, 5});
}

TEST_CASE("non-skew input is rejected") {
  Mat5 m = Mat5::Zero();
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(WeightMatrix(kS, m), InvalidInput);
}

TEST_CASE("quadratic form: face sum equals -1/2 x^T F x") {
  Rng rng(4);
  for (int it = 0; it < 10; ++it) {
    const WeightMatrix f = random_F(rng, kS);
    CHECK(relative_difference(quadratic_form(f), quadratic_form_matrix(f)) <= 1e-13);
  }
  // one face: phi_123 x_1234 x_1235 with sign(4,1,2,3,5) = -1
  std::map<Face, Complex> phi;
  for (const auto& [k, v] : fixed_phi()) phi[k] = 0.0;
  phi[{1, 2, 3}] = 1.0;
  const GrassmannElement q = quadratic_form(WeightMatrix::from_phi(kS, phi));
  CHECK(q.coeff(0b11) == Complex(-1.0));
}

TEST_CASE("odd weight is killed by the interchanged span") {
  Rng rng(9);
  const WeightMatrix f = random_F(rng, kS);
  const Tet t{1, 2, 4, 5};
  const GrassmannElement w = odd_weight(f, t);
  const std::size_t g = f.space()->require_index(t);
  const OperatorSubspace span = isotropic_span_from_F(f);
  for (const LinearOperator& d : span.basis()) {
    CHECK(apply(d.interchanged(g), w).max_abs() <= 1e-11 * w.max_abs());
  }
}

TEST_CASE("gauges act on F and leave double ratios fixed") {
  Rng rng(10);
  const WeightMatrix f = random_F(rng, kS);
  GaugeTransform g;
  for (Complex& s : g.scale) s = rng.in_annulus(0.5, 1.5);
  const WeightMatrix fg = apply_gauge_to_F(f, g);
  CHECK(ratio_deviation(canonical_double_ratios(f), canonical_double_ratios(fg)) <= 1e-11);
  // rescaling generators of the Gaussian weight by the gauge gives the gauged weight
  std::vector<Complex> factors(5);
  for (std::size_t k = 0; k < 5; ++k) factors[WeightMatrix::generator_of_row(k)] = g.scale[k];
  CHECK(relative_difference(rescale_generators(gaussian_weight(f), factors), gaussian_weight(fg)) <= 1e-13);
  g.interchange[2] = true;
  CHECK_THROWS_AS(apply_gauge_to_F(f, g), InvalidInput);
}

TEST_CASE("balancing gauge evens out magnitudes") {
  Rng rng(12);
  WeightMatrix f = random_F(rng, kS);
  GaugeTransform skew;
  skew.scale = {1e3, 1e-2, 1.0, 5.0, 1e-3};
  f = apply_gauge_to_F(f, skew);
  const WeightMatrix b = apply_gauge_to_F(f, balancing_gauge(f));
  const double spread_before = f.entries().cwiseAbs().maxCoeff();
  CHECK(spread_before > 1e2);
  CHECK(b.entries().cwiseAbs().maxCoeff() < 30.0);
  CHECK(ratio_deviation(canonical_double_ratios(f), canonical_double_ratios(b)) <= 1e-11);
}

TEST_CASE("canonical double ratios, frozen") {
  const WeightMatrix f = WeightMatrix::from_phi(kS, fixed_phi());
  const std::array<Complex, 5> want = {Complex{1.1747410624791181, 0.769796191112596},
                                       {0.3667017913593256, 0.7144362486828238},
                                       {0.6212731668009669, 1.0491539081385979},
                                       {-0.6519607843137254, 0.6911764705882353},
                                       {0.7627798195790176, -0.9609087871700633}};
  CHECK(ratio_deviation(canonical_double_ratios(f), want) <= 1e-14);
}

TEST_CASE("a vanishing ratio entry is a degeneracy") {
  auto phi = fixed_phi();
  phi[{3, 4, 5}] = 0.0;  // entry (0, 1)
  CHECK_THROWS_AS(canonical_double_ratios(WeightMatrix::from_phi(kS, phi)), DegenerateError);
}
