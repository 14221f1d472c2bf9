#include <doctest.h>

#include "p33/cocycle2weight.hpp"
#include "p33/edgeops.hpp"
#include "p33/elliptic.hpp"
#include "p33/errors.hpp"
#include "p33/random.hpp"

using namespace p33;

namespace {

constexpr Simplex4 kS{1, 2, 3, 4, 5};

EllipticParams fixed_params() {
  return EllipticParams({0.6, 0.3}, {{1, {0.1, 0.2}},
                                     {2, {-0.5, 0.1}},
                                     {3, {0.7, -0.4}},
                                     {4, {0.2, 0.9}},
                                     {5, {-0.3, -0.8}}});
}

void check_close(Complex a, Complex b, double tol) { CHECK(std::abs(a - b) <= tol * std::abs(b)); }

}  // namespace

TEST_CASE("sn cn dn against reference values") {
  struct Row {
    Complex u, k, sn, cn, dn;
  };
  const Row rows[] = {
      {{0.3, 0.2}, {0.6, 0.3}, {0.30437004848902277, 0.1906016626216607},
       {0.9732630066473785, -0.059607153357326755}, {1.0135153650366249, -0.025455767945526626}},
      {{-0.7, 0.4}, {0.9, -0.1}, {-0.6848651238966856, 0.2592348243724549},
       {0.8042941920358063, 0.22074123109454571}, {0.8848726995562843, 0.20138274253204178}},
      {{1.1, -0.5}, {0.2, 0.5}, {1.029895135901744, -0.28187773585935944},
       {0.5475780491703388, 0.5301609688708393}, {1.0548373701752314, -0.15081646204720187}},
      {{0.45, 0.0}, {0.8, 0.0}, {0.4265876367424609, 0.0}, {0.9044462328842341, 0.0},
       {0.9399652719298881, 0.0}},
  };
  for (const Row& r : rows) {
    const SnCnDn s = jacobi_sn_cn_dn(r.u, r.k);
    check_close(s.sn, r.sn, 1e-13);
    check_close(s.cn, r.cn, 1e-13);
    check_close(s.dn, r.dn, 1e-13);
  }
}

TEST_CASE("degenerate moduli close to trigonometric and hyperbolic forms") {
  const Complex u(0.4, -0.3);
  const SnCnDn a = jacobi_sn_cn_dn(u, 0.0);
  check_close(a.sn, std::sin(u), 1e-15);
  check_close(a.cn, std::cos(u), 1e-15);
  check_close(a.dn, 1.0, 1e-15);
  const SnCnDn b = jacobi_sn_cn_dn(u, 1.0);
  check_close(b.sn, std::tanh(u), 1e-15);
  check_close(b.cn, 1.0 / std::cosh(u), 1e-15);
  check_close(b.dn, 1.0 / std::cosh(u), 1e-15);
  const SnCnDn c = jacobi_sn_cn_dn(u, 1e-9);
  check_close(c.sn, std::sin(u), 1e-12);
}

TEST_CASE("duplication formula") {
  Rng rng(41);
  for (int it = 0; it < 200; ++it) {
    const Complex k = std::polar(rng.uniform(0.05, 0.95), rng.uniform(-1.0, 1.0));
    const Complex u = rng.in_box(0.6);
    const SnCnDn s = jacobi_sn_cn_dn(u, k);
    const Complex m = k * k;
    const Complex s4 = s.sn * s.sn * s.sn * s.sn;
    const Complex dup = 2.0 * s.sn * s.cn * s.dn / (1.0 - m * s4);
    check_close(jacobi_sn_cn_dn(2.0 * u, k).sn, dup, 1e-10);
  }
}

TEST_CASE("elliptic F entries, frozen") {
  const WeightMatrix f = elliptic_F(fixed_params(), kS);
  struct E {
    int i, j;
    Complex v;
  };
  const E want[] = {{0, 1, {0.30908259762202894, 0.05877138596409511}},
                    {0, 2, {-0.2830748471531345, 0.3282344050620958}},
                    {0, 3, {-0.04748911396971936, -0.33106676953952313}},
                    {0, 4, {0.15121395277989533, 0.45373807576949093}},
                    {1, 2, {-0.6655102608895902, 0.3531037452931503}},
                    {1, 3, {-0.2849511025491742, -0.41672204071496605}},
                    {1, 4, {-0.06668457033324464, 0.42546242364643}},
                    {2, 3, {0.11619787169809628, -0.6221936467374644}},
                    {2, 4, {0.509723885315302, 0.27262444519301304}},
                    {3, 4, {0.12184107617047145, 0.6012949636718675}}};
  for (const E& e : want) {
    check_close(f(static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j)), e.v, 1e-13);
    check_close(f(static_cast<std::size_t>(e.j), static_cast<std::size_t>(e.i)), -e.v, 1e-13);
  }
}

TEST_CASE("elliptic cocycle, frozen, and its primitive") {
  const auto complex = SimplexComplex::simplex(kS);
  const EllipticParams p = fixed_params();
  const Cochain w = elliptic_cocycle(p, complex);
  check_close(w.at({1, 2, 3}), {0.3343920600761545, -0.32534874652480844}, 1e-13);
  check_close(w.at({3, 4, 5}), {9.84933355854404, -0.10376605026086429}, 1e-13);
  CHECK(relative_difference(coboundary(elliptic_primitive(p, complex)), w) <= 1e-10);
}

TEST_CASE("primitive in the small-modulus limit") {
  const auto complex = SimplexComplex::simplex(kS);
  const double k = 1e-4;
  const EllipticParams p(k, fixed_params().coords());
  const Cochain nu = elliptic_primitive(p, complex);
  for (const Edge& e : complex->edges()) {
    const Complex xi = p.x(e[0]), xj = p.x(e[1]);
    const Complex lim = std::sin(xi - xj) / (k * k * std::sin(xi) * std::sin(xj));
    check_close(nu.at(key_of(e)), lim, 1e-7);
  }
}

TEST_CASE("elliptic W-cocycle and kappa product formula") {
  const EllipticParams p = fixed_params();
  const EdgeOperatorFamily fam = normalize_family(elliptic_F(p, kS));
  const Cochain w = extract_w_cocycle(fam);
  const Cochain want = elliptic_cocycle(p, SimplexComplex::simplex(kS));
  CHECK(proportionality_residual(cochain_to_vector(w), cochain_to_vector(want)) <= 1e-8);
  const Complex formula = elliptic_kappa(p, kS);
  check_close(kappa(w, base_sqrt_choice(fam, w)), formula, 1e-8);
}

TEST_CASE("coincident coordinates degenerate downstream") {
  const EllipticParams p(0.5, {{1, 0.3}, {2, 0.3}, {3, 0.1}, {4, 0.7}, {5, -0.2}});
  const Cochain w = elliptic_cocycle(p, SimplexComplex::simplex(kS));
  CHECK(w.at({1, 2, 3}) == Complex(0.0));
  CHECK(w.at({1, 2, 5}) == Complex(0.0));
  CHECK_THROWS_AS(reconstruct_F(w), DegenerateError);
}

TEST_CASE("poles and zeros of sn") {
  // sn(u, 1/2) has a pole at iK' with K' = K(m = 3/4)
  const Complex pole(0.0, 2.15651564749964);
  CHECK_THROWS_AS(EllipticParams(0.5, {{1, pole}, {2, 0.3}, {3, 0.1}}), InvalidInput);
  CHECK_NOTHROW(EllipticParams(0.5, {{1, pole + 0.2}, {2, 0.3}, {3, 0.1}}));
  const EllipticParams p(0.5, {{1, 0.0}, {2, 0.3}, {3, 0.1}, {4, 0.7}, {5, -0.2}});
  try {
    elliptic_primitive(p, SimplexComplex::simplex(kS));
    FAIL("expected a degeneracy");
  } catch (const DegenerateError& e) {
    CHECK(e.quantity() == "sn_x");
  }
}

TEST_CASE("elliptic Jacobian has full rank") {
  const linalg::MatrixXc j = elliptic_jacobian(fixed_params(), kS);
  CHECK(linalg::numeric_rank(j, 1e-6) == 5);
}
