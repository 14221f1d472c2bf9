#include <doctest.h>

#include <vector>

#include "p33/errors.hpp"
#include "p33/grassmann.hpp"
#include "p33/kernels.hpp"
#include "p33/random.hpp"
#include "test_util.hpp"

using namespace p33;

namespace {

GrassmannElement x(const SpacePtr& s, std::size_t i) { return GrassmannElement::generator(s, i); }

GrassmannElement random_dense(Rng& rng, const SpacePtr& s) {
  GrassmannElement w(s);
  for (Mask m = 0; m < w.dimension(); ++m) w.set_coeff(m, rng.in_disc());
  return w;
}

}  // namespace

TEST_CASE("generators anticommute and square to zero") {
  const auto s = GeneratorSpace::indexed(4);
  CHECK(relative_difference(multiply(x(s, 1), x(s, 0)), -1.0 * multiply(x(s, 0), x(s, 1))) == 0.0);
  CHECK(multiply(x(s, 2), x(s, 2)).is_zero());
  // x3 * x1x2 = x1x2x3 (two transpositions)
  const GrassmannElement x12 = multiply(x(s, 0), x(s, 1));
  CHECK(multiply(x(s, 2), x12).coeff(0b0111) == Complex(1.0));
  CHECK(multiply(x(s, 1), multiply(x(s, 0), x(s, 2))).coeff(0b0111) == Complex(-1.0));
}

TEST_CASE("merge sign counts inversions") {
  using kernels::merge_sign;
  CHECK(merge_sign(0b01, 0b10) == 1);
  CHECK(merge_sign(0b10, 0b01) == -1);
  CHECK(merge_sign(0b101, 0b010) == -1);
  CHECK(merge_sign(0b110, 0b001) == 1);
  CHECK(merge_sign(0, 0b1111) == 1);
}

TEST_CASE("left and right derivatives") {
  const auto s = GeneratorSpace::indexed(3);
  const GrassmannElement x123 = GrassmannElement::monomial(s, 0b111, 1.0);
  // x1 x2 x3 = -x2 x1 x3 = -x1 x3 x2
  CHECK(left_derivative(1, x123).coeff(0b101) == Complex(-1.0));
  CHECK(right_derivative(1, x123).coeff(0b101) == Complex(-1.0));
  const GrassmannElement x12 = GrassmannElement::monomial(s, 0b011, 1.0);
  CHECK(left_derivative(0, x12).coeff(0b010) == Complex(1.0));
  CHECK(right_derivative(0, x12).coeff(0b010) == Complex(-1.0));
  CHECK(left_derivative(0, x123).coeff(0b110) == Complex(1.0));
  CHECK(right_derivative(0, x123).coeff(0b110) == Complex(1.0));
  CHECK(right_derivative(2, x123).coeff(0b011) == Complex(1.0));
  CHECK(left_derivative(2, x123).coeff(0b011) == Complex(1.0));
  CHECK(left_derivative(1, GrassmannElement::monomial(s, 0b101, 1.0)).is_zero());
}

TEST_CASE("Berezin integral is the iterated right derivative") {
  const auto s = GeneratorSpace::indexed(2);
  const GrassmannElement x12 = GrassmannElement::monomial(s, 0b11, 1.0);
  const std::size_t inner_second[] = {1, 0};
  const std::size_t inner_first[] = {0, 1};
  CHECK(berezin_integral(x12, inner_second).coeff(0) == Complex(1.0));
  CHECK(berezin_integral(x12, inner_first).coeff(0) == Complex(-1.0));
  const std::size_t twice[] = {0, 0};
  CHECK_THROWS_AS(berezin_integral(x12, twice), InvalidInput);
}

TEST_CASE("Gaussian exponent example expands to the quartic term") {
  const auto s = GeneratorSpace::indexed(4);
  const Complex l(0.3, 0.1), m(-0.7, 0.4), n(1.1, -0.2);
  const GrassmannElement q = l * multiply(x(s, 0), x(s, 1)) + m * multiply(x(s, 1), x(s, 2)) +
                             n * multiply(x(s, 2), x(s, 3));
  const GrassmannElement e = exp_even(q);
  CHECK(e.coeff(0) == Complex(1.0));
  CHECK(e.coeff(0b0011) == l);
  CHECK(e.coeff(0b0110) == m);
  CHECK(e.coeff(0b1100) == n);
  CHECK_NEAR(e.coeff(0b1111), l * n, 1e-15);
  int nonzero = 0;
  for (Mask k = 0; k < 16; ++k) nonzero += e.coeff(k) != Complex{};
  CHECK(nonzero == 5);
}

TEST_CASE("exp rejects odd arguments and nonzero constant terms") {
  const auto s = GeneratorSpace::indexed(3);
  CHECK_THROWS(exp_even(x(s, 0)));
  CHECK_THROWS(exp_even(GrassmannElement::scalar(s, 2.0)));
}

TEST_CASE("parity classification") {
  const auto s = GeneratorSpace::indexed(3);
  CHECK(GrassmannElement(s).parity() == Parity::kZero);
  CHECK(x(s, 0).parity() == Parity::kOdd);
  CHECK(multiply(x(s, 0), x(s, 1)).parity() == Parity::kEven);
  CHECK((x(s, 0) + GrassmannElement::scalar(s, 1.0)).parity() == Parity::kMixed);
}

TEST_CASE("mixing spaces is rejected") {
  const auto a = GeneratorSpace::indexed(3);
  const auto b = GeneratorSpace::indexed(4);
  CHECK_THROWS_AS(multiply(x(a, 0), x(b, 0)), SpaceMismatch);
  CHECK_THROWS_AS(GeneratorSpace::make({{1, 2, 3, 4}, {1, 2, 3, 4}}), InvalidInput);
}

TEST_CASE("embed and restrict") {
  const auto small = GeneratorSpace::make({{1, 2, 3, 5}, {2, 3, 4, 5}});
  const auto big = GeneratorSpace::make({{1, 2, 3, 4}, {1, 2, 3, 5}, {2, 3, 4, 5}});
  const GrassmannElement w = multiply(x(small, 0), x(small, 1));
  const GrassmannElement e = w.embed(big);
  CHECK(e.coeff(0b110) == Complex(1.0));
  CHECK(relative_difference(e.restrict_to(small), w) == 0.0);
  CHECK_THROWS(x(big, 0).restrict_to(small));
}

TEST_CASE("serial and parallel kernels agree") {
  Rng rng(11);
  for (std::size_t n : {3u, 8u, 12u}) {
    const auto s = GeneratorSpace::indexed(n);
    const GrassmannElement a = random_dense(rng, s), b = random_dense(rng, s);
    const std::size_t dim = a.dimension();
    std::vector<Complex> ser(dim), par(dim);
    kernels::multiply_serial(a.coeffs(), b.coeffs(), ser, static_cast<unsigned>(n));
    kernels::multiply_parallel(a.coeffs(), b.coeffs(), par, static_cast<unsigned>(n));
    double diff = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      diff = std::max(diff, std::abs(ser[k] - par[k]));
      scale = std::max(scale, std::abs(ser[k]));
    }
    CHECK(diff <= 1e-12 * scale);
    for (unsigned i = 0; i < n; i += 2) {
      std::vector<Complex> s1(dim), p1(dim);
      kernels::left_derivative_serial(a.coeffs(), s1, i);
      kernels::left_derivative_parallel(a.coeffs(), p1, i);
      CHECK(s1 == p1);
      kernels::right_derivative_serial(a.coeffs(), s1, i);
      kernels::right_derivative_parallel(a.coeffs(), p1, i);
      CHECK(s1 == p1);
      kernels::multiply_generator_serial(a.coeffs(), s1, i);
      kernels::multiply_generator_parallel(a.coeffs(), p1, i);
      CHECK(s1 == p1);
    }
  }
}

TEST_CASE("multiply_generator is left multiplication") {
  Rng rng(3);
  const auto s = GeneratorSpace::indexed(5);
  const GrassmannElement f = random_dense(rng, s);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(relative_difference(multiply_generator(i, f), multiply(x(s, i), f)) <= 1e-15);
  }
}

TEST_CASE("canonical commutation: d_i x_j + x_j d_i = delta_ij") {
  Rng rng(5);
  const auto s = GeneratorSpace::indexed(4);
  const GrassmannElement f = random_dense(rng, s);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const GrassmannElement lhs =
          left_derivative(i, multiply_generator(j, f)) + multiply_generator(j, left_derivative(i, f));
      const GrassmannElement rhs = i == j ? f : GrassmannElement(s);
      CHECK(relative_difference(lhs, rhs) <= 1e-15);
    }
  }
}
