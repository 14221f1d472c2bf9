#include "p33/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "p33/errors.hpp"

namespace p33::io {
namespace {

template <std::size_t N>
std::string join(const std::array<int, N>& a) {
  std::string s;
  for (int v : a) s += std::to_string(v) + ",";
  s.pop_back();
  return s;
}

std::string join(const FaceKey& a) {
  std::string s;
  for (int v : a) s += std::to_string(v) + ",";
  if (!s.empty()) s.pop_back();
  return s;
}

FaceKey split(const std::string& s) {
  FaceKey out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  std::sort(out.begin(), out.end());
  return out;
}

Tet tet_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidInput("generator label needs 4 vertices");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

void dump_to(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(it.key()).dump() + ": ";
        dump_to(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      // Short numeric arrays ([re, im], vertex lists) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(),
                                    [](const json& x) { return x.is_primitive(); });
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const json& x : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += inner;
        dump_to(x, out, indent + 1);
      }
      out += flat ? "]" : "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json element_to_json(const GrassmannElement& w) {
  json gens = json::array();
  for (const Tet& t : w.space()->labels()) gens.push_back(t);
  json coeffs = json::array();
  for (Mask m = 0; m < w.dimension(); ++m) {
    const Complex c = w.coeff(m);
    if (c == Complex{}) continue;
    json mono = json::array();
    for (std::size_t i = 0; i < w.num_generators(); ++i) {
      if (m & (Mask{1} << i)) mono.push_back(w.space()->label(i));
    }
    coeffs.push_back({{"mono", mono}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"generators", gens}, {"coeffs", coeffs}};
}

GrassmannElement element_from_json(const json& j) {
  std::vector<Tet> labels;
  for (const json& t : j.at("generators")) labels.push_back(tet_from_json(t));
  const SpacePtr space = GeneratorSpace::make(labels);
  GrassmannElement w(space);
  for (const json& c : j.at("coeffs")) {
    std::vector<Tet> mono;
    for (const json& t : c.at("mono")) mono.push_back(tet_from_json(t));
    if (!std::is_sorted(mono.begin(), mono.end())) {
      throw InvalidInput("monomial not in canonical order");
    }
    const Mask m = space->mask_of(mono);
    if (degree(m) != static_cast<int>(mono.size())) throw InvalidInput("repeated generator");
    w.set_coeff(m, w.coeff(m) + Complex(c.at("re").get<double>(), c.at("im").get<double>()));
  }
  return w;
}

json cochain_to_json(const Cochain& c) {
  json values = json::object();
  for (const auto& [k, v] : c.values()) values[join(k)] = complex_to_json(v);
  return {{"degree", c.degree()}, {"values", values}};
}

Cochain cochain_from_json(const json& j) {
  // Either {"degree", "values"} or the bare values map.
  const json& vals = j.contains("values") ? j.at("values") : j;
  if (!vals.is_object() || vals.empty()) throw InvalidInput("cochain needs a map of values");
  const int deg = j.contains("degree") ? j.at("degree").get<int>()
                                       : static_cast<int>(split(vals.begin().key()).size()) - 1;
  std::set<int> verts;
  std::map<FaceKey, Complex> values;
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    const FaceKey k = split(it.key());
    if (static_cast<int>(k.size()) != deg + 1) throw InvalidInput("cochain key of wrong size");
    verts.insert(k.begin(), k.end());
    values[k] = complex_from_json(it.value());
  }
  ComplexPtr complex;
  const FaceKey vs(verts.begin(), verts.end());
  if (vs.size() == 5) {
    complex = SimplexComplex::make({vs});
  } else if (vs == FaceKey{1, 2, 3, 4, 5, 6}) {
    complex = SimplexComplex::boundary_of_5_simplex();
  } else {
    throw InvalidInput("cochain must live on a 4-simplex or on vertices 1..6");
  }
  Cochain c(complex, deg);
  for (const auto& [k, v] : values) c.set(k, v);
  return c;
}

json operator_to_json(const LinearOperator& d) {
  json terms = json::object();
  for (std::size_t t = 0; t < d.size(); ++t) {
    terms[join(d.space()->label(t))] = {{"beta", complex_to_json(d.beta(t))},
                                        {"gamma", complex_to_json(d.gamma(t))}};
  }
  return {{"terms", terms}};
}

json weight_matrix_to_json(const WeightMatrix& f) {
  json phi = json::object();
  for (const auto& [face, v] : f.phis()) phi[join(face)] = complex_to_json(v);
  return {{"simplex", f.simplex()}, {"phi", phi}};
}

WeightMatrix weight_matrix_from_json(const json& j) {
  const auto s = j.at("simplex").get<std::vector<int>>();
  if (s.size() != 5) throw InvalidInput("simplex needs five vertices");
  const Simplex4 simplex{s[0], s[1], s[2], s[3], s[4]};
  std::map<Face, Complex> phi;
  for (auto it = j.at("phi").begin(); it != j.at("phi").end(); ++it) {
    const FaceKey k = split(it.key());
    if (k.size() != 3) throw InvalidInput("phi key must be a 2-face");
    phi[{k[0], k[1], k[2]}] = complex_from_json(it.value());
  }
  return WeightMatrix::from_phi(simplex, phi);
}

json family_to_json(const EdgeOperatorFamily& fam) {
  json edges = json::object();
  for (const auto& [e, d] : fam.operators) edges[join(e)] = operator_to_json(d);
  return {{"edges", edges}, {"normalized", fam.normalized}};
}

json elliptic_params_to_json(const EllipticParams& p) {
  json coords = json::object();
  for (const auto& [v, x] : p.coords()) coords[std::to_string(v)] = complex_to_json(x);
  return {{"modulus", complex_to_json(p.modulus())}, {"coords", coords}};
}

EllipticParams elliptic_params_from_json(const json& j) {
  std::map<int, Complex> coords;
  for (auto it = j.at("coords").begin(); it != j.at("coords").end(); ++it) {
    coords[std::stoi(it.key())] = complex_from_json(it.value());
  }
  return EllipticParams(complex_from_json(j.at("modulus")), coords);
}

json gauges_to_json(const std::vector<TetGauge>& gauges) {
  json out = json::object();
  for (const TetGauge& g : gauges) {
    json sides = json::array();
    for (std::size_t w = 0; w < 2; ++w) {
      sides.push_back({{"simplex", PachnerScene::standard().simplices()[g.owners[w]]},
                       {"scale", complex_to_json(g.scale(w))},
                       {"interchange", g.interchange(w)}});
    }
    out[join(g.tet)] = {{"owners", sides},
                        {"tree", g.in_tree},
                        {"residual", g.residual()}};
  }
  return out;
}

json pachner_report_to_json(const PachnerReport& rep) {
  json loops = json::array();
  for (const TetGauge& g : rep.gauges) loops.push_back(g.residual());
  return {{"const", complex_to_json(rep.verification.constant)},
          {"max_residual", rep.verification.max_residual},
          {"annihilator_angle", rep.annihilator_angle},
          {"annihilator_dims", {rep.lhs_annihilator_dim, rep.rhs_annihilator_dim}},
          {"composed_agreement", rep.composed_agreement},
          {"composed_ranks", {rep.composed_rank_lhs, rep.composed_rank_rhs}},
          {"loop_residuals", loops},
          {"gauges", gauges_to_json(rep.gauges)}};
}

std::string dump(const json& j) {
  std::string out;
  dump_to(j, out, 0);
  out += "\n";
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return json::parse(in);
}

void write_output(const json& j, const std::string& path) {
  const std::string text = dump(j);
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace p33::io
