#include <doctest.h>

#include "p33/errors.hpp"
#include "p33/json_io.hpp"
#include "p33/random.hpp"

using namespace p33;

TEST_CASE("complex numbers are [re, im]") {
  const io::json j = io::complex_to_json({0.1, -2.5});
  CHECK(j.dump() == "[0.1,-2.5]");
  CHECK(io::complex_from_json(j) == Complex(0.1, -2.5));
  CHECK_THROWS(io::complex_from_json(io::json(3.0)));
}

TEST_CASE("dump uses 17 significant digits and sorted keys") {
  io::json j;
  j["b"] = 0.1;
  j["a"] = io::json::array({1, 2});
  const std::string s = io::dump(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
}

TEST_CASE("weight matrix roundtrip is exact") {
  Rng rng(61);
  const WeightMatrix f = random_F(rng, {1, 2, 3, 4, 5});
  const WeightMatrix g = io::weight_matrix_from_json(io::json::parse(io::dump(io::weight_matrix_to_json(f))));
  CHECK(g.entries() == f.entries());
  CHECK(g.simplex() == f.simplex());
}

TEST_CASE("cochain roundtrip, with and without the wrapper") {
  Rng rng(62);
  const Cochain w = random_cocycle(rng, SimplexComplex::boundary_of_5_simplex());
  const io::json j = io::json::parse(io::dump(io::cochain_to_json(w)));
  const Cochain back = io::cochain_from_json(j);
  CHECK(relative_difference(back, w) == 0.0);
  CHECK(back.complex()->top_simplices().size() == 6);
  CHECK(relative_difference(io::cochain_from_json(j.at("values")), w) == 0.0);
  CHECK_THROWS_AS(io::cochain_from_json(io::json::parse(R"({"1,2,3":[1,0],"1,2,9":[1,0]})")),
                  InvalidInput);
}

TEST_CASE("grassmann element roundtrip") {
  const auto s = GeneratorSpace::make({{1, 2, 3, 4}, {1, 2, 3, 5}});
  GrassmannElement w(s);
  w.set_coeff(0b11, {0.5, -1.0});
  w.set_coeff(0, 2.0);
  const GrassmannElement back = io::element_from_json(io::element_to_json(w));
  CHECK(relative_difference(back, w) == 0.0);
}

TEST_CASE("elliptic params roundtrip") {
  const EllipticParams p({0.6, 0.3}, {{1, {0.1, 0.2}}, {2, {-0.5, 0.1}}, {3, {0.7, -0.4}}});
  const EllipticParams q = io::elliptic_params_from_json(io::elliptic_params_to_json(p));
  CHECK(q.modulus() == p.modulus());
  CHECK(q.coords() == p.coords());
}

TEST_CASE("same seed, same bytes") {
  Rng a(63), b(63);
  const auto& scene = PachnerScene::standard();
  const std::string x = io::dump(io::pachner_report_to_json(run_pachner(random_cocycle(a, scene.complex()))));
  const std::string y = io::dump(io::pachner_report_to_json(run_pachner(random_cocycle(b, scene.complex()))));
  CHECK(x == y);
}
