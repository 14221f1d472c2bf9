#include <doctest.h>

#include "p33/cocycle2weight.hpp"
#include "p33/edgeops.hpp"
#include "p33/errors.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"

using namespace p33;

namespace {

constexpr Simplex4 kS{1, 2, 3, 4, 5};

// delta of a fixed 1-cochain on the lexicographic edges.
Cochain fixed_cocycle() {
  const Complex nu[10] = {{0.8, 0.1}, {-0.6, 0.9}, {1.1, -0.2}, {0.5, 0.7},  {-0.9, -0.3},
                          {0.7, 1.2}, {1.3, 0.4},  {-0.4, 0.6}, {0.9, -0.8}, {0.6, 0.5}};
  const auto complex = SimplexComplex::simplex(kS);
  Cochain c(complex, 1);
  int i = 0;
  for (const Edge& e : complex->edges()) c.set(key_of(e), nu[i++]);
  return coboundary(c);
}

Cochain ones() {
  const auto complex = SimplexComplex::simplex(kS);
  Cochain w(complex, 2);
  for (const Face& f : complex->faces()) w.set(key_of(f), 1.0);
  return w;
}

}  // namespace

TEST_CASE("fixed cocycle values") {
  const Cochain w = fixed_cocycle();
  CHECK(std::abs(w.at({1, 2, 3}) - Complex(0.5, -1.1)) <= 1e-15);
  CHECK(std::abs(w.at({3, 4, 5}) - Complex(-0.7, 1.9)) <= 1e-15);
}

TEST_CASE("kappa by the rank condition, frozen") {
  const Cochain w = fixed_cocycle();
  const Complex k = kappa_ratio(w, SqrtChoice::principal(w), {1, 3, 4, 5}, {2, 3, 4, 5}, {1, 2, 3, 4});
  CHECK(std::abs(k - Complex(9.08429988436947, 0.5897372500266138)) <= 1e-11);
}

TEST_CASE("reconstruct_F with principal roots, frozen double ratios") {
  const WeightMatrix f = reconstruct_F(fixed_cocycle());
  const std::array<Complex, 5> want = {Complex{-0.7970768531235439, -4.6500779687845},
                                       {-1.8183223900630532, -4.042269609865841},
                                       {-2.197894904384302, 0.9986242255294557},
                                       {1.2602700190466434, 0.1585266404744918},
                                       {-4.295089880273243, 4.276176139177855}};
  CHECK(ratio_deviation(canonical_double_ratios(f), want) <= 1e-10);
}

TEST_CASE("square-root choices") {
  const Cochain w = fixed_cocycle();
  const SqrtChoice p = SqrtChoice::principal(w);
  CHECK_NOTHROW(p.validate(w));
  const SqrtChoice q = SqrtChoice::with_signs(w, 0b1);
  CHECK(q.at({1, 2, 3}) == -p.at({1, 2, 3}));
  CHECK(q.flipped({1, 2, 3}).at({1, 2, 3}) == p.at({1, 2, 3}));
  CHECK_THROWS(SqrtChoice(std::map<Face, Complex>{{{1, 2, 3}, 1.0}}).validate(w));
}

TEST_CASE("superisotropic operator and its t-variants") {
  Rng rng(31);
  const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
  const Cochain w = extract_w_cocycle(fam);
  const SuperisotropicOperator f = superisotropic_f(fam, w, SqrtChoice::principal(w));
  CHECK(superisotropy_residual(f.f) <= 1e-10);
  const SqrtChoice base = base_sqrt_choice(fam, w);
  for (const Tet& t : fam.space->labels()) {
    const SuperisotropicOperator ft = build_f_t(fam, w, base, t);
    const std::string pat = pattern_string(component_pattern(ft.f));
    const std::size_t g = fam.space->require_index(t);
    for (std::size_t i = 0; i < pat.size(); ++i) CHECK(pat[i] == (i == g ? 'd' : 'x'));
  }
}

TEST_CASE("closed-form kappa equals the rank condition with the base branch") {
  Rng rng(32);
  for (int it = 0; it < 10; ++it) {
    const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
    const Cochain w = extract_w_cocycle(fam);
    const SqrtChoice base = base_sqrt_choice(fam, w);
    const Complex a = kappa(w, base);
    const Complex b = kappa_ratio(w, base, {1, 3, 4, 5}, {2, 3, 4, 5}, {1, 2, 3, 4});
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
  }
}

TEST_CASE("all-ones cocycle: lambda_minus vanishes") {
  const Cochain w = ones();
  try {
    kappa(w, SqrtChoice::principal(w));
    FAIL("expected a degeneracy");
  } catch (const DegenerateError& e) {
    CHECK(e.quantity() == "lambda_minus");
  }
  try {
    reconstruct_F(w);
    FAIL("expected a degeneracy");
  } catch (const DegenerateError& e) {
    CHECK(e.quantity() == "lambda_minus");
  }
}

TEST_CASE("vanishing face values are rejected") {
  Cochain w = fixed_cocycle();
  Cochain nu(w.complex(), 1);
  nu.set({1, 2}, 1.0);
  nu.set({1, 3}, 1.0);
  nu.set({2, 3}, 0.0);
  // (delta nu)_123 = nu_23 - nu_13 + nu_12 = 0
  const Cochain z = coboundary(nu);
  CHECK(z.at({1, 2, 3}) == Complex(0.0));
  CHECK_THROWS_AS(reconstruct_F(z), DegenerateError);
}

TEST_CASE("non-cocycles are rejected") {
  Cochain w = fixed_cocycle();
  w.set({1, 2, 3}, w.at({1, 2, 3}) + 0.1);
  CHECK_THROWS_AS(reconstruct_F(w), InvalidInput);
}

TEST_CASE("roundtrips") {
  Rng rng(33);
  for (int it = 0; it < 10; ++it) {
    const WeightMatrix f = random_F(rng, kS);
    const EdgeOperatorFamily fam = normalize_family(f);
    const Cochain w = extract_w_cocycle(fam);
    const Reconstruction rec = reconstruct_F_detailed(w, base_sqrt_choice(fam, w));
    CHECK(rec.skew_residual <= 1e-9);
    CHECK(ratio_deviation(canonical_double_ratios(f), canonical_double_ratios(rec.F)) <= 1e-8);
    const Cochain back = extract_w_cocycle(normalize_family(reconstruct_F(w)));
    CHECK(proportionality_residual(cochain_to_vector(back), cochain_to_vector(w)) <= 1e-8);
  }
}
