#include "p33/kernels.hpp"

#include <algorithm>

namespace p33::kernels {
namespace {

inline int parity_sign(Mask m) noexcept {
  return (__builtin_popcount(m) & 1) ? -1 : 1;
}

inline Mask low_bits(unsigned i) noexcept { return (Mask{1} << i) - 1; }

}  // namespace

void multiply_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> out, unsigned n) {
  const Mask size = Mask{1} << n;
  std::fill(out.begin(), out.end(), Complex{});
  for (Mask ma = 0; ma < size; ++ma) {
    if (a[ma] == Complex{}) continue;
    for (Mask mb = 0; mb < size; ++mb) {
      if ((ma & mb) != 0 || b[mb] == Complex{}) continue;
      out[ma | mb] += static_cast<double>(merge_sign(ma, mb)) * a[ma] * b[mb];
    }
  }
}

// Each output monomial r collects a(s) b(r^s) over the submasks s of r, so
// threads never write to the same coefficient and the summation order is
// fixed regardless of thread count.
void multiply_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out, unsigned n) {
  const std::int64_t size = std::int64_t{1} << n;
  const bool go_parallel = static_cast<std::size_t>(size) >= kParallelThreshold;
#pragma omp parallel for schedule(dynamic, 64) if (go_parallel)
  for (std::int64_t ri = 0; ri < size; ++ri) {
    const Mask r = static_cast<Mask>(ri);
    Complex acc{};
    Mask s = r;
    while (true) {
      const Complex as = a[s];
      if (as != Complex{}) {
        const Mask rest = r ^ s;
        const Complex bs = b[rest];
        if (bs != Complex{}) {
          acc += static_cast<double>(merge_sign(s, rest)) * as * bs;
        }
      }
      if (s == 0) break;
      s = (s - 1) & r;
    }
    out[r] = acc;
  }
}

void left_derivative_serial(std::span<const Complex> f, std::span<Complex> out,
                            unsigned i) {
  const Mask bit = Mask{1} << i;
  std::fill(out.begin(), out.end(), Complex{});
  for (Mask m = 0; m < f.size(); ++m) {
    if ((m & bit) == 0) continue;
    out[m ^ bit] = static_cast<double>(parity_sign(m & low_bits(i))) * f[m];
  }
}

void left_derivative_parallel(std::span<const Complex> f,
                              std::span<Complex> out, unsigned i) {
  const Mask bit = Mask{1} << i;
  const std::int64_t size = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static) if (f.size() >= kParallelThreshold)
  for (std::int64_t ri = 0; ri < size; ++ri) {
    const Mask r = static_cast<Mask>(ri);
    out[r] = (r & bit) ? Complex{}
                       : static_cast<double>(parity_sign(r & low_bits(i))) *
                             f[r | bit];
  }
}

void right_derivative_serial(std::span<const Complex> f,
                             std::span<Complex> out, unsigned i) {
  const Mask bit = Mask{1} << i;
  std::fill(out.begin(), out.end(), Complex{});
  for (Mask m = 0; m < f.size(); ++m) {
    if ((m & bit) == 0) continue;
    out[m ^ bit] = static_cast<double>(parity_sign(m >> (i + 1))) * f[m];
  }
}

void right_derivative_parallel(std::span<const Complex> f,
                               std::span<Complex> out, unsigned i) {
  const Mask bit = Mask{1} << i;
  const std::int64_t size = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static) if (f.size() >= kParallelThreshold)
  for (std::int64_t ri = 0; ri < size; ++ri) {
    const Mask r = static_cast<Mask>(ri);
    out[r] = (r & bit) ? Complex{}
                       : static_cast<double>(parity_sign(r >> (i + 1))) *
                             f[r | bit];
  }
}

void multiply_generator_serial(std::span<const Complex> f,
                               std::span<Complex> out, unsigned i) {
  const Mask bit = Mask{1} << i;
  std::fill(out.begin(), out.end(), Complex{});
  for (Mask m = 0; m < f.size(); ++m) {
    if (m & bit) continue;
    out[m | bit] = static_cast<double>(parity_sign(m & low_bits(i))) * f[m];
  }
}

void multiply_generator_parallel(std::span<const Complex> f,
                                 std::span<Complex> out, unsigned i) {
  const Mask bit = Mask{1} << i;
  const std::int64_t size = static_cast<std::int64_t>(f.size());
#pragma omp parallel for schedule(static) if (f.size() >= kParallelThreshold)
  for (std::int64_t ri = 0; ri < size; ++ri) {
    const Mask r = static_cast<Mask>(ri);
    out[r] = (r & bit) ? static_cast<double>(parity_sign(r & low_bits(i))) *
                             f[r ^ bit]
                       : Complex{};
  }
}

}  // namespace p33::kernels
