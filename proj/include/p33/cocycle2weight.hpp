#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "p33/edgeops.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33 {

// The five vertices of a cochain living on a single 4-simplex.
Simplex4 simplex_of(const Cochain& c);

/// A fixed square root of every omega_s.
class SqrtChoice {
 public:
  SqrtChoice() = default;
  explicit SqrtChoice(std::map<Face, Complex> roots) : roots_(std::move(roots)) {}

  static SqrtChoice principal(const Cochain& omega);
  // Principal roots with the faces whose bit is set in `bits` negated; bit i
  // addresses the i-th face in lexicographic order.
  static SqrtChoice with_signs(const Cochain& omega, unsigned bits);

  Complex at(const Face& s) const;
  const std::map<Face, Complex>& roots() const noexcept { return roots_; }
  SqrtChoice flipped(const Face& s) const;
  // Throws unless root^2 = omega_s to rel_tol.
  void validate(const Cochain& omega, double rel_tol = 1e-12) const;

 private:
  std::map<Face, Complex> roots_;
};

enum class ComponentKind { kZero, kDerivative, kMultiplication, kMixed };

// Kind of each t-component: pure d/dx_t when |gamma| <= tol |beta|, pure x_t
// when |beta| <= tol |gamma|. Indexed by generator.
std::vector<ComponentKind> component_pattern(const LinearOperator& f,
                                             double tol = 1e-8);
// 'd', 'x', '0' or '?' per generator.
std::string pattern_string(const std::vector<ComponentKind>& p);

struct SuperisotropicOperator {
  LinearOperator f;
  std::map<Edge, Complex> alpha;
  std::vector<Edge> flipped;
};

std::map<Edge, Complex> alpha_coefficients(const Cochain& omega,
                                           const SqrtChoice& s);

SuperisotropicOperator superisotropic_f(const EdgeOperatorFamily& fam,
                                        const Cochain& omega,
                                        const SqrtChoice& s);

// Flips alpha on the four edges through the vertex opposite t.
SuperisotropicOperator build_f_t(const EdgeOperatorFamily& fam,
                                 const Cochain& omega, const SqrtChoice& s,
                                 const Tet& t);

// max_t |<f,f>_t| / |f|^2, |f| the largest coefficient.
double superisotropy_residual(const LinearOperator& f);

// Sign choice for which every component of f is proportional to d/dx_t.
SqrtChoice base_sqrt_choice(const EdgeOperatorFamily& fam, const Cochain& omega);

// lambda_+ / lambda_- from the closed form, vertex positions 1..5 of the
// simplex. Throws DegenerateError("lambda_minus") when lambda_- vanishes.
Complex kappa(const Cochain& omega, const SqrtChoice& s);
struct KappaTerms {
  Complex plus, minus;
};
KappaTerms kappa_terms(const Cochain& omega, const SqrtChoice& s);

// f^(u)|_t / f^(v)|_t from the rank condition on the edges of t.
Complex kappa_ratio(const Cochain& omega, const SqrtChoice& s, const Tet& u,
                    const Tet& v, const Tet& t);

// Ratio of the dominant coefficients of f^(u)|_t and f^(v)|_t.
Complex direct_component_ratio(const EdgeOperatorFamily& fam,
                               const Cochain& omega, const SqrtChoice& s,
                               const Tet& u, const Tet& v, const Tet& t);

struct Reconstruction {
  WeightMatrix F;
  // |F + F^T| before antisymmetrization, relative.
  double skew_residual = 0.0;
};

Reconstruction reconstruct_F_detailed(const Cochain& omega,
                                      const std::optional<SqrtChoice>& s = {});
WeightMatrix reconstruct_F(const Cochain& omega,
                           const std::optional<SqrtChoice>& s = {});

// Any least-squares 1-cochain with delta nu = omega on a 4-simplex.
Cochain cocycle_preimage(const Cochain& omega);

}  // namespace p33
