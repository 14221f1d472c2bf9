#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "p33/acceptance.hpp"
#include "p33/cocycle2weight.hpp"
#include "p33/edgeops.hpp"
#include "p33/elliptic.hpp"
#include "p33/errors.hpp"
#include "p33/json_io.hpp"
#include "p33/pachner.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"

using namespace p33;
using io::json;

namespace {

constexpr Simplex4 kSimplex{1, 2, 3, 4, 5};

struct RunConfig {
  std::uint64_t seed = 1;
  bool elliptic = false;
  std::string modulus;
  std::string coords;
  std::string cocycle;
  std::string input;
  std::string out = "-";
  std::optional<double> tolerance;
  int batch = 1;
};

// 0: within tolerance, 1: residual too large, 2: usage, 3: degenerate or
// inconsistent input.
enum Exit { kOk = 0, kResidual = 1, kUsage = 2, kDegenerate = 3 };

json error_json(const std::exception& e) {
  json j = {{"message", e.what()}};
  if (const auto* d = dynamic_cast<const DegenerateError*>(&e)) {
    j["type"] = "DegenerateError";
    j["quantity"] = d->quantity();
  } else if (dynamic_cast<const ConsistencyError*>(&e)) {
    j["type"] = "ConsistencyError";
  } else if (dynamic_cast<const NumericError*>(&e)) {
    j["type"] = "NumericError";
  } else if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const json::exception*>(&e)) {
    j["type"] = "InvalidInput";
  } else {
    j["type"] = "Error";
  }
  return j;
}

Complex parse_complex(const std::string& s) {
  std::stringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw InvalidInput("bad complex '" + s + "', expected re,im");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw InvalidInput("bad complex '" + s + "', expected re,im");
  }
  return {re, im};
}

// Elliptic parameters from --coords/--modulus, or drawn from the seed.
EllipticParams elliptic_params(const RunConfig& cfg, Rng& rng,
                               const std::vector<int>& vertices) {
  if (cfg.coords.empty()) {
    EllipticParams p = random_elliptic(rng, vertices);
    if (cfg.modulus.empty()) return p;
    return EllipticParams(parse_complex(cfg.modulus), p.coords());
  }
  json j = io::read_file(cfg.coords);
  if (!j.contains("coords")) j = json{{"coords", j}};
  if (!cfg.modulus.empty()) {
    j["modulus"] = io::complex_to_json(parse_complex(cfg.modulus));
  } else if (!j.contains("modulus")) {
    throw InvalidInput("--coords file has no modulus; pass --modulus re,im");
  }
  return io::elliptic_params_from_json(j);
}

std::string cocycle_path(const RunConfig& cfg) {
  return cfg.cocycle.empty() ? cfg.input : cfg.cocycle;
}

double tol(const RunConfig& cfg, double fallback) { return cfg.tolerance.value_or(fallback); }

json base_report(const RunConfig& cfg, const char* command) {
  return {{"command", command}, {"seed", cfg.seed}};
}

int finish(json report, const RunConfig& cfg, bool ok) {
  report["status"] = ok ? "ok" : "residual_exceeds_tolerance";
  io::write_output(report, cfg.out);
  return ok ? kOk : kResidual;
}

int fail(json report, const RunConfig& cfg, const std::exception& e) {
  report["status"] = "error";
  report["error"] = error_json(e);
  io::write_output(report, cfg.out);
  const auto* ex = &e;
  const bool usage = dynamic_cast<const InvalidInput*>(ex) || dynamic_cast<const json::exception*>(ex);
  return usage ? kUsage : kDegenerate;
}

json pachner_run(const RunConfig& cfg, std::uint64_t seed, int& code) {
  json rep = {{"seed", seed}};
  try {
    const PachnerScene& scene = PachnerScene::standard();
    Rng rng(seed);
    Cochain omega(scene.complex(), 2);
    if (!cocycle_path(cfg).empty()) {
      rep["source"] = "file";
      omega = io::cochain_from_json(io::read_file(cocycle_path(cfg)));
      if (omega.complex()->top_simplices() != scene.complex()->top_simplices()) {
        throw InvalidInput("cocycle must live on the boundary of the 5-simplex 1..6");
      }
    } else if (cfg.elliptic) {
      rep["source"] = "elliptic";
      const EllipticParams p = elliptic_params(cfg, rng, scene.complex()->vertices());
      rep["elliptic"] = io::elliptic_params_to_json(p);
      omega = elliptic_cocycle(p, scene.complex());
    } else {
      rep["source"] = "random";
      omega = random_cocycle(rng, scene.complex());
    }
    rep["cocycle"] = io::cochain_to_json(omega);
    if (cocycle_residual(omega) > 1e-9) throw InvalidInput("input is not a cocycle");
    const double t = tol(cfg, 1e-8);
    const PachnerReport r = run_pachner(omega, std::max(t, 1e-8));
    rep["report"] = io::pachner_report_to_json(r);
    rep["interchanges"] = r.gauges.empty() ? 0 : [&] {
      int n = 0;
      for (const TetGauge& g : r.gauges) n += g.interchange(0) + g.interchange(1);
      return n;
    }();
    const bool ok = r.verification.max_residual <= t && r.max_loop_residual <= t &&
                    r.composed_agreement <= t && r.annihilator_angle <= t &&
                    std::abs(r.verification.constant) > 1e-10 &&
                    r.composed_rank_lhs == 9 && r.composed_rank_rhs == 9;
    rep["status"] = ok ? "ok" : "residual_exceeds_tolerance";
    code = ok ? kOk : kResidual;
  } catch (const std::exception& e) {
    rep["status"] = "error";
    rep["error"] = error_json(e);
    const bool usage = dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const json::exception*>(&e);
    code = usage ? kUsage : kDegenerate;
  }
  return rep;
}

int cmd_verify_pachner(const RunConfig& cfg) {
  if (cfg.batch <= 1) {
    int code = kOk;
    json rep = pachner_run(cfg, cfg.seed, code);
    rep["command"] = "verify-pachner";
    io::write_output(rep, cfg.out);
    return code;
  }
  std::vector<json> runs(static_cast<std::size_t>(cfg.batch));
  std::vector<int> codes(runs.size(), kOk);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cfg.batch; ++i) {
    const auto k = static_cast<std::size_t>(i);
    runs[k] = pachner_run(cfg, cfg.seed + k, codes[k]);
  }
  int code = kOk;
  for (int c : codes) code = std::max(code, c);
  json rep = base_report(cfg, "verify-pachner");
  rep["batch"] = cfg.batch;
  rep["runs"] = runs;
  rep["status"] = code == kOk ? "ok" : "failures";
  io::write_output(rep, cfg.out);
  return code;
}

int cmd_weight_from_cocycle(const RunConfig& cfg) {
  json rep = base_report(cfg, "weight-from-cocycle");
  try {
    Rng rng(cfg.seed);
    const ComplexPtr complex = SimplexComplex::simplex(kSimplex);
    Cochain omega(complex, 2);
    if (!cocycle_path(cfg).empty()) {
      omega = io::cochain_from_json(io::read_file(cocycle_path(cfg)));
    } else if (cfg.elliptic) {
      const EllipticParams p = elliptic_params(cfg, rng, complex->vertices());
      rep["elliptic"] = io::elliptic_params_to_json(p);
      omega = elliptic_cocycle(p, complex);
    } else {
      omega = random_cocycle(rng, complex);
    }
    rep["cocycle"] = io::cochain_to_json(omega);
    const Reconstruction rec = reconstruct_F_detailed(omega);
    const Cochain back = extract_w_cocycle(normalize_family(rec.F));
    const double roundtrip =
        proportionality_residual(cochain_to_vector(back), cochain_to_vector(omega));
    rep["F"] = io::weight_matrix_to_json(rec.F);
    rep["diagnostics"] = {{"skew_residual", rec.skew_residual},
                          {"omega_roundtrip", roundtrip},
                          {"cocycle_residual", cocycle_residual(omega)}};
    return finish(rep, cfg, roundtrip <= tol(cfg, 1e-8));
  } catch (const std::exception& e) {
    return fail(rep, cfg, e);
  }
}

// F from the positional file, elliptic parameters, or the seed.
WeightMatrix weight_input(const RunConfig& cfg, json& rep) {
  Rng rng(cfg.seed);
  if (!cfg.input.empty()) {
    rep["source"] = "file";
    return io::weight_matrix_from_json(io::read_file(cfg.input));
  }
  if (cfg.elliptic) {
    rep["source"] = "elliptic";
    const EllipticParams p = elliptic_params(cfg, rng, {1, 2, 3, 4, 5});
    rep["elliptic"] = io::elliptic_params_to_json(p);
    return elliptic_F(p, kSimplex);
  }
  rep["source"] = "random";
  return random_F(rng, kSimplex);
}

int cmd_cocycle_from_weight(const RunConfig& cfg) {
  json rep = base_report(cfg, "cocycle-from-weight");
  try {
    const WeightMatrix f = weight_input(cfg, rep);
    rep["F"] = io::weight_matrix_to_json(f);
    const EdgeOperatorFamily fam = normalize_family(f);
    const WExtraction w = extract_nu_and_w(fam);
    rep["omega"] = io::cochain_to_json(w.omega);
    rep["nu"] = io::cochain_to_json(w.nu);
    const double cres = cocycle_residual(w.omega);
    const double vres = vertex_coboundary_residual(fam);
    rep["diagnostics"] = {{"cocycle_residual", cres}, {"vertex_coboundary_residual", vres}};
    const double t = tol(cfg, 1e-10);
    return finish(rep, cfg, cres <= t && vres <= t);
  } catch (const std::exception& e) {
    return fail(rep, cfg, e);
  }
}

int cmd_edge_operators(const RunConfig& cfg) {
  json rep = base_report(cfg, "edge-operators");
  try {
    const WeightMatrix f = weight_input(cfg, rep);
    rep["F"] = io::weight_matrix_to_json(f);
    const EdgeOperatorFamily fam = normalize_family(f);
    rep["family"] = io::family_to_json(fam);
    const double vres = vertex_coboundary_residual(fam);
    const double ex = proportionality_residual(
        raw_edge_operator(f, {f.simplex()[0], f.simplex()[1]}).coefficients(),
        explicit_edge12_operator(f).coefficients());
    rep["diagnostics"] = {{"vertex_coboundary_residual", vres},
                          {"edge12_explicit_residual", ex}};
    const double t = tol(cfg, 1e-10);
    return finish(rep, cfg, vres <= t && ex <= t);
  } catch (const std::exception& e) {
    return fail(rep, cfg, e);
  }
}

int cmd_elliptic_f(const RunConfig& cfg) {
  json rep = base_report(cfg, "elliptic-f");
  try {
    Rng rng(cfg.seed);
    const EllipticParams p = elliptic_params(cfg, rng, {1, 2, 3, 4, 5});
    rep["elliptic"] = io::elliptic_params_to_json(p);
    const ComplexPtr complex = SimplexComplex::simplex(kSimplex);
    const WeightMatrix f = elliptic_F(p, kSimplex);
    const Cochain omega = elliptic_cocycle(p, complex);
    const EdgeOperatorFamily fam = normalize_family(f);
    const Cochain w = extract_w_cocycle(fam);
    const double prop = proportionality_residual(cochain_to_vector(w), cochain_to_vector(omega));
    const Complex formula = elliptic_kappa(p, kSimplex);
    const Complex closed = kappa(w, base_sqrt_choice(fam, w));
    const double kres = std::abs(closed - formula) / std::abs(formula);
    rep["F"] = io::weight_matrix_to_json(f);
    rep["cocycle"] = io::cochain_to_json(omega);
    rep["kappa"] = {{"product_formula", io::complex_to_json(formula)},
                    {"closed_form", io::complex_to_json(closed)}};
    rep["diagnostics"] = {{"w_cocycle_proportionality", prop}, {"kappa_residual", kres}};
    const double t = tol(cfg, 1e-8);
    return finish(rep, cfg, prop <= t && kres <= t);
  } catch (const std::exception& e) {
    return fail(rep, cfg, e);
  }
}

int cmd_selftest(const RunConfig& cfg) {
  acceptance::Options opts;
  opts.seed = cfg.seed;
  opts.tolerance = cfg.tolerance;
  std::printf("seed %llu\n", static_cast<unsigned long long>(cfg.seed));
  bool ok = true;
  for (int id = 1; id <= acceptance::kNumCriteria; ++id) {
    const acceptance::CriterionResult r = acceptance::run_criterion(id, opts);
    std::printf("%s\n", acceptance::format(r).c_str());
    std::fflush(stdout);
    ok = ok && r.pass();
  }
  return ok ? kOk : kResidual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann weights, W-cocycles and the Pachner 3-3 relation"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub, bool weight_input_positional) {
    sub->add_option("--seed", cfg.seed, "seed of the random generator")->capture_default_str();
    sub->add_option("--tolerance", cfg.tolerance, "residual tolerance");
    sub->add_option("--out", cfg.out, "output file (- for stdout)")->capture_default_str();
    sub->add_flag("--elliptic", cfg.elliptic, "use the elliptic parameterization");
    sub->add_option("--modulus", cfg.modulus, "elliptic modulus re,im");
    sub->add_option("--coords", cfg.coords, "elliptic coordinates JSON")->check(CLI::ExistingFile);
    sub->add_option("--cocycle", cfg.cocycle, "cocycle JSON")->check(CLI::ExistingFile);
    if (weight_input_positional) {
      sub->add_option("weight", cfg.input, "F JSON")->check(CLI::ExistingFile);
    } else {
      sub->add_option("input", cfg.input, "cocycle JSON")->check(CLI::ExistingFile);
    }
  };

  CLI::App* vp = app.add_subcommand("verify-pachner", "check the 3-3 relation built from a cocycle on the boundary of the 5-simplex");
  common(vp, false);
  vp->add_option("--batch", cfg.batch, "evaluate seeds seed..seed+n-1")->check(CLI::PositiveNumber);
  CLI::App* wc = app.add_subcommand("weight-from-cocycle", "gauge-fixed F from a 4-simplex cocycle");
  common(wc, false);
  CLI::App* cw = app.add_subcommand("cocycle-from-weight", "W-cocycle of F");
  common(cw, true);
  CLI::App* eo = app.add_subcommand("edge-operators", "normalized edge operators of F");
  common(eo, true);
  CLI::App* ef = app.add_subcommand("elliptic-f", "elliptic F, its cocycle and kappa");
  common(ef, false);
  CLI::App* st = app.add_subcommand("selftest", "run the acceptance criteria");
  std::uint64_t selftest_seed = acceptance::Options{}.seed;
  st->add_option("--seed", selftest_seed, "seed")->capture_default_str();
  st->add_option("--tolerance", cfg.tolerance, "override every upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  if (vp->parsed()) return cmd_verify_pachner(cfg);
  if (wc->parsed()) return cmd_weight_from_cocycle(cfg);
  if (cw->parsed()) return cmd_cocycle_from_weight(cfg);
  if (eo->parsed()) return cmd_edge_operators(cfg);
  if (ef->parsed()) return cmd_elliptic_f(cfg);
  cfg.seed = selftest_seed;
  return cmd_selftest(cfg);
}
