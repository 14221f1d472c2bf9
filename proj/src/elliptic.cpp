#include "p33/elliptic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "p33/errors.hpp"

namespace p33 {
namespace {

constexpr int kMaxLanden = 64;

SnCnDn landen(Complex u, Complex k, int depth) {
  if (std::abs(k) < 1e-14) return {std::sin(u), std::cos(u), 1.0};
  if (std::abs(1.0 - k * k) < 1e-14) {
    const Complex sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (depth >= kMaxLanden) {
    throw NumericError("Landen transformation did not converge");
  }
  const Complex kp = std::sqrt(1.0 - k * k);
  const Complex k1 = (1.0 - kp) / (1.0 + kp);
  const SnCnDn s = landen(u / (1.0 + k1), k1, depth + 1);
  const Complex q = k1 * s.sn * s.sn;
  const Complex den = 1.0 + q;
  return {(1.0 + k1) * s.sn / den, s.cn * s.dn / den, (1.0 - q) / den};
}

void check_finite(const SnCnDn& s, Complex u) {
  const bool ok = std::isfinite(s.sn.real()) && std::isfinite(s.sn.imag()) &&
                  std::isfinite(s.cn.real()) && std::isfinite(s.cn.imag()) &&
                  std::isfinite(s.dn.real()) && std::isfinite(s.dn.imag());
  if (!ok) {
    throw NumericError("elliptic function at a pole near u = " +
                       std::to_string(u.real()) + "+" + std::to_string(u.imag()) + "i");
  }
}

}  // namespace

SnCnDn jacobi_sn_cn_dn(Complex u, Complex k) {
  const SnCnDn s = landen(u, k, 0);
  check_finite(s, u);
  return s;
}

Complex half_angle_ratio(Complex u, Complex k) {
  const SnCnDn s = jacobi_sn_cn_dn(0.5 * u, k);
  return s.sn / (s.cn * s.dn);
}

EllipticParams::EllipticParams(Complex modulus, std::map<int, Complex> coords,
                               double margin)
    : modulus_(modulus), coords_(std::move(coords)) {
  if (std::abs(modulus_) < 1e-8) {
    throw InvalidInput("elliptic modulus must be nonzero");
  }
  for (auto a = coords_.begin(); a != coords_.end(); ++a) {
    const SnCnDn self = jacobi_sn_cn_dn(a->second, modulus_);
    if (std::abs(self.sn) > 1.0 / margin) {
      throw InvalidInput("coordinate of vertex " + std::to_string(a->first) +
                         " is near a pole of sn");
    }
    for (auto b = std::next(a); b != coords_.end(); ++b) {
      const Complex d = a->second - b->second;
      const SnCnDn full = jacobi_sn_cn_dn(d, modulus_);
      const SnCnDn half = jacobi_sn_cn_dn(0.5 * d, modulus_);
      if (std::abs(full.sn) > 1.0 / margin || std::abs(half.cn * half.dn) < margin) {
        throw InvalidInput("coordinates " + std::to_string(a->first) + "," +
                           std::to_string(b->first) + " near a pole");
      }
    }
  }
}

Complex EllipticParams::x(int vertex) const {
  auto it = coords_.find(vertex);
  if (it == coords_.end()) {
    throw InvalidInput("no coordinate for vertex " + std::to_string(vertex));
  }
  return it->second;
}

Cochain elliptic_cocycle(const EllipticParams& p, const ComplexPtr& complex) {
  Cochain c(complex, 2);
  const auto sn = [&](Complex u) { return jacobi_sn_cn_dn(u, p.modulus()).sn; };
  for (const Face& f : complex->faces()) {
    const Complex xi = p.x(f[0]), xj = p.x(f[1]), xk = p.x(f[2]);
    c.set(key_of(f), sn(xi - xj) * sn(xi - xk) * sn(xj - xk));
  }
  return c;
}

Cochain elliptic_primitive(const EllipticParams& p, const ComplexPtr& complex) {
  Cochain c(complex, 1);
  const Complex k2 = p.modulus() * p.modulus();
  const auto sn = [&](Complex u) { return jacobi_sn_cn_dn(u, p.modulus()).sn; };
  for (int v : complex->vertices()) {
    if (std::abs(sn(p.x(v))) < 1e-8) {
      throw DegenerateError("sn_x", "sn vanishes at the coordinate of vertex " +
                                        std::to_string(v));
    }
  }
  for (const Edge& e : complex->edges()) {
    const Complex xi = p.x(e[0]), xj = p.x(e[1]);
    c.set(key_of(e), sn(xi - xj) / (k2 * sn(xi) * sn(xj)));
  }
  return c;
}

WeightMatrix elliptic_F(const EllipticParams& p, const Simplex4& simplex) {
  Mat5 f = Mat5::Zero();
  for (Eigen::Index i = 0; i < 5; ++i) {
    for (Eigen::Index j = i + 1; j < 5; ++j) {
      const Complex v = half_angle_ratio(p.x(simplex[i]) - p.x(simplex[j]), p.modulus());
      f(i, j) = v;
      f(j, i) = -v;
    }
  }
  return WeightMatrix(simplex, f);
}

Complex elliptic_kappa(const EllipticParams& p, const Simplex4& s) {
  const auto g = [&](int a, int b) {
    return half_angle_ratio(p.x(s[a - 1]) - p.x(s[b - 1]), p.modulus());
  };
  return -g(1, 3) / g(2, 3) * g(1, 4) / g(2, 4);
}

std::array<Complex, 5> cocycle_ratios(const Cochain& omega) {
  const auto& v = omega.complex()->vertices();
  if (v.size() < 5) throw InvalidInput("cocycle_ratios needs five vertices");
  const Complex base = omega.at({v[0], v[1], v[2]});
  if (base == Complex{}) throw DegenerateError("omega_123", "reference face vanishes");
  const std::array<std::array<int, 2>, 5> rest{{{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  std::array<Complex, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) {
    out[i] = omega.at({v[0], v[rest[i][0]], v[rest[i][1]]}) / base;
  }
  return out;
}

linalg::MatrixXc elliptic_jacobian(const EllipticParams& p,
                                   const Simplex4& simplex, double step) {
  const ComplexPtr complex = SimplexComplex::simplex(simplex);
  const auto ratios = [&](Complex modulus, const std::map<int, Complex>& coords) {
    return cocycle_ratios(elliptic_cocycle(EllipticParams(modulus, coords, 0.0), complex));
  };
  linalg::MatrixXc jac(5, 5);
  // Central differences along the real direction; the map is holomorphic.
  for (Eigen::Index c = 0; c < 5; ++c) {
    Complex mp = p.modulus(), mm = p.modulus();
    auto cp = p.coords(), cm = p.coords();
    if (c == 0) {
      mp += step;
      mm -= step;
    } else {
      cp[simplex[c]] += step;
      cm[simplex[c]] -= step;
    }
    const auto up = ratios(mp, cp);
    const auto dn = ratios(mm, cm);
    for (Eigen::Index r = 0; r < 5; ++r) {
      jac(r, c) = (up[static_cast<std::size_t>(r)] - dn[static_cast<std::size_t>(r)]) / (2.0 * step);
    }
  }
  return jac;
}

}  // namespace p33
