#include "p33/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "p33/errors.hpp"
#include "p33/kernels.hpp"

namespace p33 {
namespace {

std::string tet_str(const Tet& t) {
  return std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]) +
         std::to_string(t[3]);
}

void require_same(const GrassmannElement& a, const GrassmannElement& b,
                  const char* op) {
  if (!same_space(a.space(), b.space())) {
    throw SpaceMismatch(std::string(op) + ": operands in different spaces");
  }
}

void require_generator(const GrassmannElement& f, std::size_t i) {
  if (i >= f.num_generators()) {
    throw InvalidInput("generator index " + std::to_string(i) +
                       " outside space of size " +
                       std::to_string(f.num_generators()));
  }
}

}  // namespace

GeneratorSpace::GeneratorSpace(std::vector<Tet> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() > kMaxGenerators) {
    throw InvalidInput("too many generators: " +
                       std::to_string(labels_.size()));
  }
  for (const Tet& t : labels_) {
    if (!(t[0] < t[1] && t[1] < t[2] && t[2] < t[3])) {
      throw InvalidInput("generator label not strictly increasing: " +
                         tet_str(t));
    }
  }
  std::sort(labels_.begin(), labels_.end());
  if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw InvalidInput("duplicate generator label");
  }
}

std::shared_ptr<const GeneratorSpace> GeneratorSpace::make(
    std::vector<Tet> labels) {
  return std::make_shared<const GeneratorSpace>(std::move(labels));
}

std::shared_ptr<const GeneratorSpace> GeneratorSpace::indexed(std::size_t n) {
  std::vector<Tet> labels;
  for (std::size_t k = 0; k < n; ++k) {
    labels.push_back({1, 2, 3, 4 + static_cast<int>(k)});
  }
  return make(std::move(labels));
}

std::optional<std::size_t> GeneratorSpace::index_of(const Tet& t) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), t);
  if (it == labels_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t GeneratorSpace::require_index(const Tet& t) const {
  auto idx = index_of(t);
  if (!idx) throw InvalidInput("tetrahedron " + tet_str(t) + " not in space");
  return *idx;
}

Mask GeneratorSpace::mask_of(std::span<const Tet> tets) const {
  Mask m = 0;
  for (const Tet& t : tets) m |= Mask{1} << require_index(t);
  return m;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

int degree(Mask m) noexcept { return __builtin_popcount(m); }

GrassmannElement::GrassmannElement(SpacePtr space)
    : space_(std::move(space)),
      coeffs_(std::size_t{1} << space_->size(), Complex{}) {}

GrassmannElement GrassmannElement::scalar(SpacePtr space, Complex value) {
  GrassmannElement e(std::move(space));
  e.coeffs_[0] = value;
  return e;
}

GrassmannElement GrassmannElement::generator(SpacePtr space,
                                             std::size_t index) {
  GrassmannElement e(std::move(space));
  require_generator(e, index);
  e.coeffs_[Mask{1} << index] = 1.0;
  return e;
}

GrassmannElement GrassmannElement::monomial(SpacePtr space, Mask mask,
                                            Complex value) {
  GrassmannElement e(std::move(space));
  e.coeffs_.at(mask) = value;
  return e;
}

double GrassmannElement::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Parity GrassmannElement::parity(double rel_tol) const {
  const double cut = rel_tol * max_abs();
  bool even = false;
  bool odd = false;
  for (Mask m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == Complex{} || std::abs(coeffs_[m]) <= cut) continue;
    (degree(m) % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return Parity::kMixed;
  if (even) return Parity::kEven;
  if (odd) return Parity::kOdd;
  return Parity::kZero;
}

GrassmannElement GrassmannElement::normalized(double rel_threshold) const {
  GrassmannElement out = *this;
  const double cut = rel_threshold * max_abs();
  for (Complex& c : out.coeffs_) {
    if (std::abs(c) < cut) c = Complex{};
  }
  return out;
}

GrassmannElement GrassmannElement::embed(const SpacePtr& target) const {
  std::vector<unsigned> position(num_generators());
  for (std::size_t i = 0; i < num_generators(); ++i) {
    auto idx = target->index_of(space_->label(i));
    if (!idx) throw SpaceMismatch("embed: target lacks a generator");
    position[i] = static_cast<unsigned>(*idx);
  }
  // Both spaces are sorted by the same order, so relative generator order is
  // preserved and no signs appear.
  GrassmannElement out(target);
  for (Mask m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == Complex{}) continue;
    Mask t = 0;
    for (Mask r = m; r != 0; r &= r - 1) {
      t |= Mask{1} << position[__builtin_ctz(r)];
    }
    out.coeffs_[t] = coeffs_[m];
  }
  return out;
}

GrassmannElement GrassmannElement::restrict_to(const SpacePtr& target,
                                               double rel_tol) const {
  Mask kept = 0;
  std::vector<unsigned> position(num_generators(), 0);
  for (std::size_t i = 0; i < num_generators(); ++i) {
    if (auto idx = target->index_of(space_->label(i))) {
      kept |= Mask{1} << i;
      position[i] = static_cast<unsigned>(*idx);
    }
  }
  if (degree(kept) != static_cast<int>(target->size())) {
    throw SpaceMismatch("restrict_to: target is not a subspace");
  }
  const double cut = rel_tol * max_abs();
  GrassmannElement out(target);
  for (Mask m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == Complex{}) continue;
    if ((m & ~kept) != 0) {
      if (std::abs(coeffs_[m]) > cut) {
        throw InvalidInput("restrict_to: element depends on dropped generator");
      }
      continue;
    }
    Mask t = 0;
    for (Mask r = m; r != 0; r &= r - 1) {
      t |= Mask{1} << position[__builtin_ctz(r)];
    }
    out.coeffs_[t] = coeffs_[m];
  }
  return out;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  require_same(*this, o, "operator+");
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  require_same(*this, o, "operator-");
  for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
  return a += b;
}
GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
  return a -= b;
}
GrassmannElement operator*(Complex s, GrassmannElement a) { return a *= s; }

double relative_difference(const GrassmannElement& a,
                           const GrassmannElement& b) {
  require_same(a, b, "relative_difference");
  double diff = 0.0;
  for (std::size_t m = 0; m < a.dimension(); ++m) {
    diff = std::max(diff, std::abs(a.coeffs()[m] - b.coeffs()[m]));
  }
  const double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return diff / scale;
}

GrassmannElement multiply(const GrassmannElement& a,
                          const GrassmannElement& b) {
  require_same(a, b, "multiply");
  GrassmannElement out(a.space());
  kernels::multiply_parallel(a.coeffs(), b.coeffs(), out.coeffs(),
                             static_cast<unsigned>(a.num_generators()));
  return out;
}

GrassmannElement left_derivative(std::size_t generator,
                                 const GrassmannElement& f) {
  require_generator(f, generator);
  GrassmannElement out(f.space());
  kernels::left_derivative_parallel(f.coeffs(), out.coeffs(),
                                    static_cast<unsigned>(generator));
  return out;
}

GrassmannElement right_derivative(std::size_t generator,
                                  const GrassmannElement& f) {
  require_generator(f, generator);
  GrassmannElement out(f.space());
  kernels::right_derivative_parallel(f.coeffs(), out.coeffs(),
                                     static_cast<unsigned>(generator));
  return out;
}

GrassmannElement multiply_generator(std::size_t generator,
                                    const GrassmannElement& f) {
  require_generator(f, generator);
  GrassmannElement out(f.space());
  kernels::multiply_generator_parallel(f.coeffs(), out.coeffs(),
                                       static_cast<unsigned>(generator));
  return out;
}

GrassmannElement berezin_integral(const GrassmannElement& f,
                                  std::span<const std::size_t> vars) {
  Mask seen = 0;
  for (std::size_t v : vars) {
    require_generator(f, v);
    const Mask bit = Mask{1} << v;
    if (seen & bit) throw InvalidInput("berezin_integral: repeated variable");
    seen |= bit;
  }
  GrassmannElement out = f;
  for (std::size_t v : vars) out = right_derivative(v, out);
  return out;
}

GrassmannElement exp_even(const GrassmannElement& q) {
  if (q.coeff(0) != Complex{}) {
    throw InvalidInput("exp_even: constant term must be zero");
  }
  const Parity p = q.parity();
  if (p == Parity::kOdd || p == Parity::kMixed) {
    throw InvalidInput("exp_even: argument must be even");
  }
  GrassmannElement sum = GrassmannElement::scalar(q.space(), 1.0);
  GrassmannElement term = sum;
  // q^k vanishes once 2k exceeds the number of generators.
  const std::size_t max_power = q.num_generators() / 2;
  for (std::size_t k = 1; k <= max_power; ++k) {
    term = multiply(term, q);
    term *= 1.0 / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

}  // namespace p33
