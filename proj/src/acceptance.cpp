#include "p33/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "p33/cocycle2weight.hpp"
#include "p33/edgeops.hpp"
#include "p33/elliptic.hpp"
#include "p33/errors.hpp"
#include "p33/grassmann.hpp"
#include "p33/operators.hpp"
#include "p33/pachner.hpp"
#include "p33/random.hpp"
#include "p33/weights.hpp"

namespace p33::acceptance {
namespace {

using linalg::MatrixXc;
using linalg::VectorXc;

constexpr Simplex4 kS{1, 2, 3, 4, 5};

class Recorder {
 public:
  Recorder(CriterionResult& r, const Options& o) : r_(r), o_(o) {}

  // Tracks the worst value of a named upper-bound check.
  void upper(const std::string& name, double value, double bound) {
    Check& c = find(name, o_.tolerance.value_or(bound), true);
    if (std::isnan(value)) value = INFINITY;
    c.value = std::max(c.value, value);
  }
  void lower(const std::string& name, double value, double bound) {
    Check& c = find(name, bound, false);
    if (std::isnan(value)) value = -INFINITY;
    c.value = std::min(c.value, value);
  }
  void require(bool ok, const std::string& what) {
    if (!ok) r_.failures.push_back(what);
  }
  void fail(const std::string& what) { r_.failures.push_back(what); }

  std::size_t count(std::size_t n) const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(n * o_.scale)));
  }

  void finish() {
    for (Check& c : r_.checks) {
      c.pass = c.upper ? c.value <= c.bound : c.value >= c.bound;
    }
  }

 private:
  Check& find(const std::string& name, double bound, bool upper) {
    for (Check& c : r_.checks) {
      if (c.name == name) return c;
    }
    r_.checks.push_back({name, upper ? 0.0 : INFINITY, bound, upper, false});
    return r_.checks.back();
  }

  CriterionResult& r_;
  const Options& o_;
};

// Guards one random instance: any exception is recorded as a failure.
void guarded(Recorder& rec, const std::string& label, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rec.fail(label + ": " + e.what());
  }
}

GrassmannElement random_element(Rng& rng, const SpacePtr& space, int parity,
                                bool zero_constant = false) {
  GrassmannElement w(space);
  for (Mask m = 0; m < w.dimension(); ++m) {
    if (parity >= 0 && degree(m) % 2 != parity) continue;
    if (zero_constant && m == 0) continue;
    if (rng.uniform() < 0.3) continue;
    w.set_coeff(m, rng.in_disc());
  }
  return w;
}

double cross(const std::pair<Complex, Complex>& a, const std::pair<Complex, Complex>& b) {
  const double na = std::hypot(std::abs(a.first), std::abs(a.second));
  const double nb = std::hypot(std::abs(b.first), std::abs(b.second));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.first * b.second - a.second * b.first) / (na * nb);
}

Complex at(const Cochain& w, int i, int j, int k) { return w.at({i, j, k}); }

void criterion1(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(1000);
  for (std::size_t it = 0; it < n; ++it) {
    const std::size_t gens = 1 + rng.index(6);
    const SpacePtr space = GeneratorSpace::indexed(gens);
    const int pa = static_cast<int>(rng.index(2)), pb = static_cast<int>(rng.index(2));
    const GrassmannElement a = random_element(rng, space, pa);
    const GrassmannElement b = random_element(rng, space, pb);
    const GrassmannElement g = random_element(rng, space, -1);
    const double sign = (pa * pb) % 2 ? -1.0 : 1.0;
    rec.upper("anticommutativity", relative_difference(multiply(a, b), sign * multiply(b, a)), 1e-12);

    const std::size_t i = rng.index(gens);
    const double ea = pa ? -1.0 : 1.0, eb = pb ? -1.0 : 1.0;
    const GrassmannElement left = left_derivative(i, multiply(a, g));
    const GrassmannElement left_rule =
        multiply(left_derivative(i, a), g) + ea * multiply(a, left_derivative(i, g));
    rec.upper("leibniz_left", relative_difference(left, left_rule), 1e-12);
    const GrassmannElement right = right_derivative(i, multiply(g, b));
    const GrassmannElement right_rule =
        multiply(g, right_derivative(i, b)) + eb * multiply(right_derivative(i, g), b);
    rec.upper("leibniz_right", relative_difference(right, right_rule), 1e-12);

    const std::size_t vars[] = {i};
    rec.upper("berezin_vs_right_derivative",
              relative_difference(berezin_integral(g, vars), right_derivative(i, g)), 1e-12);
    const Mask mono = static_cast<Mask>(rng.bits() & ((Mask{1} << gens) - 1));
    const GrassmannElement m = GrassmannElement::monomial(space, mono, 1.0);
    rec.upper("berezin_vs_right_derivative",
              relative_difference(berezin_integral(m, vars), right_derivative(i, m)), 1e-12);

    const GrassmannElement q = random_element(rng, space, 0, true);
    rec.upper("exp_q_exp_minus_q",
              relative_difference(multiply(exp_even(q), exp_even(-1.0 * q)),
                                  GrassmannElement::scalar(space, 1.0)),
              1e-12);
  }
}

void criterion2(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const WeightMatrix f = random_F(rng, kS);
      const GrassmannElement w = gaussian_weight(f);
      rec.upper("quadratic_form_cross_check",
                relative_difference(quadratic_form(f), quadratic_form_matrix(f)), 1e-13);
      const OperatorSubspace span = isotropic_span_from_F(f);
      for (const LinearOperator& d : span.basis()) {
        rec.upper("p_plus_Fx_annihilates", apply(d, w).max_abs() / (d.max_abs() * w.max_abs()), 1e-12);
      }
      rec.upper("span_isotropy", span.isotropy_residual(), 1e-12);
      const OperatorSubspace ann = annihilator_of(w);
      rec.require(ann.dimension() == 5, "annihilator dimension " + std::to_string(ann.dimension()));
      rec.upper("annihilator_angle", max_principal_angle(ann, span), 1e-8);
    });
  }
}

void criterion3(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const WeightMatrix f = random_F(rng, kS);
      const EdgeOperatorFamily raw = raw_family(f);  // throws unless every space is 1-dim
      const GrassmannElement w = gaussian_weight(f);
      for (const auto& [e, d] : raw.operators) {
        rec.upper("edge_operator_annihilates", apply(d, w).max_abs() / w.max_abs(), 1e-11);
        const auto star = star_tetrahedra(e, kS);
        for (std::size_t g : d.support(1e-12)) {
          rec.require(std::find(star.begin(), star.end(), f.space()->label(g)) != star.end(),
                      "edge operator supported outside its star");
        }
      }
      rec.upper("edge12_matches_explicit_formula",
                proportionality_residual(raw.at({1, 2}).coefficients(),
                                         explicit_edge12_operator(f).coefficients()),
                1e-10);
      const EdgeOperatorFamily fam = normalize_family(f);  // throws unless kernel is 1-dim
      rec.upper("vertex_coboundaries_vanish", vertex_coboundary_residual(fam), 1e-10);
    });
  }
}

void criterion4(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const WeightMatrix f = random_F(rng, kS);
      const EdgeOperatorFamily fam = normalize_family(f);
      const Cochain w = extract_w_cocycle(fam);
      rec.upper("is_cocycle", cocycle_residual(w), 1e-12);

      GaugeTransform g;
      for (Complex& s : g.scale) s = rng.in_annulus(0.5, 1.5);
      const Cochain wg = extract_w_cocycle(normalize_family(apply_gauge_to_F(f, g)));
      rec.upper("gauge_invariance",
                proportionality_residual(cochain_to_vector(wg), cochain_to_vector(w)), 1e-9);

      const std::size_t t = fam.space->require_index({1, 2, 3, 4});
      const auto comp = [&](int a, int b) { return fam.at({a, b}).component_at(t); };
      const Complex den = at(w, 1, 3, 4) - at(w, 2, 3, 4);
      const auto d12 = comp(1, 2), d34 = comp(3, 4), d13 = comp(1, 3), d24 = comp(2, 4);
      const double scale = std::max({std::abs(d13.first), std::abs(d13.second),
                                     std::abs(d24.first), std::abs(d24.second)});
      const auto rel = [&](std::pair<Complex, Complex> lhs, Complex c12, Complex c34) {
        const Complex b = -(c12 * d12.first + c34 * d34.first) / den;
        const Complex g2 = -(c12 * d12.second + c34 * d34.second) / den;
        return std::max(std::abs(lhs.first - b), std::abs(lhs.second - g2)) / scale;
      };
      rec.upper("relation_dd", rel(d13, at(w, 1, 2, 4), at(w, 2, 3, 4)), 1e-9);
      rec.upper("relation_dd", rel(d24, at(w, 1, 2, 3), at(w, 1, 3, 4)), 1e-9);
      const LinearOperator& o12 = fam.at({1, 2});
      const LinearOperator& o34 = fam.at({3, 4});
      const Complex a = at(w, 1, 2, 3) * at(w, 1, 2, 4) * partial_scalar_product(o12, o12, t);
      const Complex b = at(w, 1, 3, 4) * at(w, 2, 3, 4) * partial_scalar_product(o34, o34, t);
      rec.upper("relation_nd", std::abs(a + b) / std::max({std::abs(a), std::abs(b), 1e-300}), 1e-9);
    });
  }
}

void criterion5(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
      const Cochain w = extract_w_cocycle(fam);
      const SqrtChoice principal = SqrtChoice::principal(w);
      const SuperisotropicOperator f = superisotropic_f(fam, w, principal);
      rec.upper("superisotropy", superisotropy_residual(f.f), 1e-10);

      const std::size_t t = fam.space->require_index({1, 2, 3, 4});
      const auto pair = [&](Edge a, Edge b) {
        const auto ca = fam.at(a).component_at(t), cb = fam.at(b).component_at(t);
        return std::pair<Complex, Complex>{f.alpha.at(a) * ca.first + f.alpha.at(b) * cb.first,
                                           f.alpha.at(a) * ca.second + f.alpha.at(b) * cb.second};
      };
      const auto pa = pair({1, 2}, {3, 4}), pb = pair({1, 3}, {2, 4}), pc = pair({1, 4}, {2, 3});
      rec.upper("paired_operators_proportional", std::max({cross(pa, pb), cross(pa, pc), cross(pb, pc)}), 1e-9);

      const SqrtChoice base = base_sqrt_choice(fam, w);
      for (const Tet& tt : fam.space->labels()) {
        const SuperisotropicOperator ft = build_f_t(fam, w, base, tt);
        rec.upper("f_t_superisotropy", superisotropy_residual(ft.f), 1e-10);
        for (std::size_t g = 0; g < 5; ++g) {
          const auto [b, c] = ft.f.component_at(g);
          const double leak = fam.space->label(g) == tt ? std::abs(c) / std::abs(b)
                                                         : std::abs(b) / std::abs(c);
          rec.upper("f_t_component_pattern", leak, 1e-9);
        }
      }
    });
  }
}

void criterion6(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  const Tet u{1, 3, 4, 5}, v{2, 3, 4, 5}, t{1, 2, 3, 4};
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const EdgeOperatorFamily fam = normalize_family(random_F(rng, kS));
      const Cochain w = extract_w_cocycle(fam);
      const SqrtChoice base = base_sqrt_choice(fam, w);
      const Complex closed = kappa(w, base);
      const Complex direct = direct_component_ratio(fam, w, base, u, v, t);
      const Complex rank = kappa_ratio(w, base, u, v, t);
      rec.upper("closed_form_vs_direct", std::abs(closed - direct) / std::abs(direct), 1e-9);
      rec.upper("rank_condition_vs_direct", std::abs(rank - direct) / std::abs(direct), 1e-9);
    });
  }
  const ComplexPtr complex = SimplexComplex::simplex(kS);
  Cochain ones(complex, 2);
  for (const Face& f : complex->faces()) ones.set(key_of(f), 1.0);
  bool raised = false;
  try {
    kappa(ones, SqrtChoice::principal(ones));
  } catch (const DegenerateError& e) {
    raised = e.quantity() == "lambda_minus";
  }
  rec.require(raised, "all-ones cocycle did not raise lambda_minus");
}

void criterion7(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(100);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "instance " + std::to_string(it), [&] {
      const WeightMatrix f = random_F(rng, kS);
      const EdgeOperatorFamily fam = normalize_family(f);
      const Cochain w = extract_w_cocycle(fam);
      const WeightMatrix back = reconstruct_F(w, base_sqrt_choice(fam, w));
      rec.upper("double_ratios_preserved",
                ratio_deviation(canonical_double_ratios(f), canonical_double_ratios(back)), 1e-8);
      const WeightMatrix principal = reconstruct_F(w);
      const Cochain w2 = extract_w_cocycle(normalize_family(principal));
      rec.upper("omega_roundtrip",
                proportionality_residual(cochain_to_vector(w2), cochain_to_vector(w)), 1e-8);
    });
  }
}

void criterion8(Recorder& rec, Rng& rng) {
  const std::size_t points = rec.count(10000);
  for (std::size_t it = 0; it < points; ++it) {
    Complex k;
    switch (it % 3) {
      case 0:
        k = std::polar(rng.uniform(0.05, 0.95), rng.uniform(-1.0, 1.0));
        break;
      case 1:
        k = std::polar(std::pow(10.0, rng.uniform(-8.0, -3.0)), rng.uniform(-3.0, 3.0));
        break;
      default:
        k = 1.0 - std::polar(std::pow(10.0, rng.uniform(-8.0, -3.0)), rng.uniform(-1.5, 1.5));
    }
    const Complex u(rng.uniform(-1.5, 1.5), rng.uniform(-1.0, 1.0));
    const SnCnDn s = jacobi_sn_cn_dn(u, k);
    const Complex s2 = s.sn * s.sn, c2 = s.cn * s.cn, d2 = s.dn * s.dn, ks = k * k * s2;
    rec.upper("sn2_plus_cn2", std::abs(s2 + c2 - 1.0) / std::max({1.0, std::abs(s2), std::abs(c2)}), 1e-11);
    rec.upper("dn2_plus_m_sn2", std::abs(d2 + ks - 1.0) / std::max({1.0, std::abs(d2), std::abs(ks)}), 1e-11);
  }

  const std::size_t draws = rec.count(20);
  const ComplexPtr complex = SimplexComplex::simplex(kS);
  for (std::size_t it = 0; it < draws; ++it) {
    guarded(rec, "draw " + std::to_string(it), [&] {
      const EllipticParams p = random_elliptic(rng, {1, 2, 3, 4, 5});
      const Cochain w = elliptic_cocycle(p, complex);
      rec.upper("primitive_coboundary_equals_omega",
                relative_difference(coboundary(elliptic_primitive(p, complex)), w), 1e-10);
      const WeightMatrix f = elliptic_F(p, kS);
      const EdgeOperatorFamily fam = normalize_family(f);
      const Cochain we = extract_w_cocycle(fam);
      rec.upper("elliptic_w_cocycle_proportional",
                proportionality_residual(cochain_to_vector(we), cochain_to_vector(w)), 1e-8);
      const SqrtChoice base = base_sqrt_choice(fam, we);
      const Complex formula = elliptic_kappa(p, kS);
      const Complex rank = kappa_ratio(we, base, {1, 3, 4, 5}, {2, 3, 4, 5}, {1, 2, 3, 4});
      const Complex closed = kappa(we, base);
      rec.upper("kappa_product_formula", std::abs(rank - formula) / std::abs(formula), 1e-8);
      rec.upper("kappa_product_formula", std::abs(closed - formula) / std::abs(formula), 1e-8);
    });
  }
}

void pachner_checks(Recorder& rec, const Cochain& omega) {
  const PachnerReport rep = run_pachner(omega);
  rec.upper("loop_residuals", rep.max_loop_residual, 1e-8);
  rec.upper("composed_operators_agree", rep.composed_agreement, 1e-8);
  rec.upper("composed_operators_annihilate", rep.composed_annihilation, 1e-8);
  rec.require(rep.composed_rank_lhs == 9 && rep.composed_rank_rhs == 9,
              "composed operators span " + std::to_string(rep.composed_rank_lhs) + "/" +
                  std::to_string(rep.composed_rank_rhs) + " dimensions");
  rec.require(rep.lhs_annihilator_dim == 9 && rep.rhs_annihilator_dim == 9,
              "annihilator dimensions " + std::to_string(rep.lhs_annihilator_dim) + "/" +
                  std::to_string(rep.rhs_annihilator_dim));
  rec.upper("max_residual_33", rep.verification.max_residual, 1e-8);
  rec.lower("abs_const", std::abs(rep.verification.constant), 1e-10);
  rec.upper("annihilator_angle", rep.annihilator_angle, 1e-8);
}

void criterion9(Recorder& rec, Rng& rng) {
  const PachnerScene& scene = PachnerScene::standard();
  const std::size_t n = rec.count(50);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "random omega " + std::to_string(it), [&] {
      pachner_checks(rec, random_cocycle(rng, scene.complex()));
    });
  }
  const std::size_t ne = rec.count(10);
  for (std::size_t it = 0; it < ne; ++it) {
    guarded(rec, "elliptic omega " + std::to_string(it), [&] {
      const EllipticParams p = random_elliptic(rng, scene.complex()->vertices());
      pachner_checks(rec, elliptic_cocycle(p, scene.complex()));
    });
  }
}

// Each output's gradient scaled to unit norm, then sigma_min / sigma_max.
double normalized_gap(MatrixXc jac) {
  for (Eigen::Index r = 0; r < jac.rows(); ++r) {
    const double n = jac.row(r).norm();
    if (n == 0.0) return 0.0;
    jac.row(r) /= n;
  }
  const Eigen::VectorXd s = linalg::singular_values(jac);
  return s(s.size() - 1) / s(0);
}

template <typename Fn>
MatrixXc phi_jacobian(const std::map<Face, Complex>& phi, Fn&& ratios) {
  const double h = 1e-6;
  MatrixXc jac(5, 10);
  Eigen::Index c = 0;
  for (const auto& [face, value] : phi) {
    auto up = phi, dn = phi;
    up[face] += h;
    dn[face] -= h;
    const std::array<Complex, 5> a = ratios(up), b = ratios(dn);
    for (Eigen::Index r = 0; r < 5; ++r) {
      jac(r, c) = (a[static_cast<std::size_t>(r)] - b[static_cast<std::size_t>(r)]) / (2.0 * h);
    }
    ++c;
  }
  return jac;
}

void criterion10(Recorder& rec, Rng& rng) {
  const std::size_t n = rec.count(5);
  for (std::size_t it = 0; it < n; ++it) {
    guarded(rec, "point " + std::to_string(it), [&] {
      const auto phi = random_phi(rng, kS);
      const MatrixXc dr = phi_jacobian(phi, [](const std::map<Face, Complex>& p) {
        return canonical_double_ratios(WeightMatrix::from_phi(kS, p));
      });
      rec.lower("double_ratio_jacobian_gap", normalized_gap(dr), 1e-4);
      const MatrixXc wr = phi_jacobian(phi, [](const std::map<Face, Complex>& p) {
        return cocycle_ratios(extract_w_cocycle(normalize_family(WeightMatrix::from_phi(kS, p))));
      });
      rec.lower("cocycle_ratio_jacobian_gap", normalized_gap(wr), 1e-4);
      const EllipticParams ep = random_elliptic(rng, {1, 2, 3, 4, 5});
      rec.lower("elliptic_jacobian_gap", normalized_gap(elliptic_jacobian(ep, kS)), 1e-4);
    });
  }
}

const char* kTitles[kNumCriteria] = {
    "grassmann core",       "gaussian nullspace",  "edge operators",
    "w-cocycle",            "superisotropy",       "kappa closed form",
    "reconstruction",       "elliptic",            "pachner 3-3",
    "jacobian rank probes"};

}  // namespace

bool CriterionResult::pass() const {
  return failures.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

CriterionResult run_criterion(int id, const Options& opts) {
  if (id < 1 || id > kNumCriteria) throw InvalidInput("no such criterion");
  CriterionResult r;
  r.id = id;
  r.title = kTitles[id - 1];
  Recorder rec(r, opts);
  Rng rng(opts.seed + static_cast<std::uint64_t>(id));
  static const std::function<void(Recorder&, Rng&)> kRun[kNumCriteria] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  guarded(rec, "criterion", [&] { kRun[id - 1](rec, rng); });
  rec.finish();
  return r;
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kNumCriteria; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format(const CriterionResult& r) {
  std::string s = std::string(r.pass() ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) +
                  " " + r.title + " |";
  char buf[160];
  for (const Check& c : r.checks) {
    std::snprintf(buf, sizeof buf, " %s %.3g%s%.0e%s", c.name.c_str(), c.value,
                  c.upper ? "<=" : ">=", c.bound, c.pass ? "" : "(!)");
    s += buf;
    s += ",";
  }
  if (!r.checks.empty()) s.pop_back();
  for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i) s += " | " + r.failures[i];
  if (r.failures.size() > 3) {
    s += " | (+" + std::to_string(r.failures.size() - 3) + " more)";
  }
  return s;
}

}  // namespace p33::acceptance
