#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace p33 {

using Complex = std::complex<double>;

// A tetrahedron, used as the label of a Grassmann generator: four strictly
// increasing vertex ids.
using Tet = std::array<int, 4>;

// Monomials are bitmasks over the generator ordering of a GeneratorSpace.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxGenerators = 16;

/// Ordered list of generator labels. Labels are kept sorted lexicographically;
/// canonical monomials list generators in this order.
class GeneratorSpace {
 public:
  explicit GeneratorSpace(std::vector<Tet> labels);

  static std::shared_ptr<const GeneratorSpace> make(std::vector<Tet> labels);
  // n abstract generators {1,2,3,4}, {1,2,3,5}, ..., handy for pure algebra.
  static std::shared_ptr<const GeneratorSpace> indexed(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const Tet& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Tet>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(const Tet& t) const;
  std::size_t require_index(const Tet& t) const;
  Mask mask_of(std::span<const Tet> tets) const;

  bool operator==(const GeneratorSpace& other) const = default;

 private:
  std::vector<Tet> labels_;
};

using SpacePtr = std::shared_ptr<const GeneratorSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;

enum class Parity { kZero, kEven, kOdd, kMixed };

/// Element of the finite Grassmann algebra over C generated by a
/// GeneratorSpace. Stored densely: coeffs()[m] is the coefficient of the
/// canonical monomial with generator set m.
class GrassmannElement {
 public:
  explicit GrassmannElement(SpacePtr space);

  static GrassmannElement scalar(SpacePtr space, Complex value);
  static GrassmannElement generator(SpacePtr space, std::size_t index);
  static GrassmannElement monomial(SpacePtr space, Mask mask, Complex value);

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t num_generators() const noexcept { return space_->size(); }
  std::size_t dimension() const noexcept { return coeffs_.size(); }

  Complex coeff(Mask m) const { return coeffs_.at(m); }
  void set_coeff(Mask m, Complex c) { coeffs_.at(m) = c; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  double max_abs() const noexcept;
  bool is_zero() const noexcept { return max_abs() == 0.0; }
  // Parity of the monomials whose magnitude exceeds tol * max_abs().
  Parity parity(double rel_tol = 0.0) const;

  // Prunes coefficients below 1e-14 * max_abs(). Never applied implicitly.
  GrassmannElement normalized(double rel_threshold = 1e-14) const;

  // Same element expressed in a larger space containing every label of ours.
  GrassmannElement embed(const SpacePtr& target) const;
  // Drops generators absent from target; throws if a dropped generator
  // carries a coefficient above rel_tol * max_abs().
  GrassmannElement restrict_to(const SpacePtr& target,
                               double rel_tol = 0.0) const;

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  GrassmannElement& operator*=(Complex s);

 private:
  SpacePtr space_;
  std::vector<Complex> coeffs_;
};

GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b);
GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b);
GrassmannElement operator*(Complex s, GrassmannElement a);

// Max coefficient distance, relative to max(|a|,|b|,floor).
double relative_difference(const GrassmannElement& a,
                           const GrassmannElement& b);

GrassmannElement multiply(const GrassmannElement& a,
                          const GrassmannElement& b);

GrassmannElement left_derivative(std::size_t generator,
                                 const GrassmannElement& f);
GrassmannElement right_derivative(std::size_t generator,
                                  const GrassmannElement& f);

// Iterated Berezin integral; vars[0] is the innermost differential.
GrassmannElement berezin_integral(const GrassmannElement& f,
                                  std::span<const std::size_t> vars);

// Taylor exponent of an even element with zero constant term.
GrassmannElement exp_even(const GrassmannElement& q);

// Left multiplication by a single generator, x_i * f.
GrassmannElement multiply_generator(std::size_t generator,
                                    const GrassmannElement& f);

int degree(Mask m) noexcept;

}  // namespace p33
