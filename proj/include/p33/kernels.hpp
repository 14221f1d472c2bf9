#pragma once

// Dense coefficient kernels for the Grassmann algebra. Each parallel kernel
// has a serial reference with the same contract; tests and the benchmark
// compare them.

#include <complex>
#include <cstdint>
#include <span>

namespace p33::kernels {

using Complex = std::complex<double>;
using Mask = std::uint32_t;

// Sign (+1/-1) of reordering the concatenation (a-sequence, b-sequence) into
// increasing order. a and b must be disjoint.
inline int merge_sign(Mask a, Mask b) noexcept {
  int inversions = 0;
  while (b != 0) {
    const int j = __builtin_ctz(b);
    inversions += __builtin_popcount(a >> (j + 1));
    b &= b - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

// out = a * b over n generators; all spans have size 2^n.
void multiply_serial(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> out, unsigned n);
void multiply_parallel(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out, unsigned n);

// out = d/dx_i f (left) or f d/dx_i (right).
void left_derivative_serial(std::span<const Complex> f, std::span<Complex> out,
                            unsigned i);
void left_derivative_parallel(std::span<const Complex> f,
                              std::span<Complex> out, unsigned i);
void right_derivative_serial(std::span<const Complex> f,
                             std::span<Complex> out, unsigned i);
void right_derivative_parallel(std::span<const Complex> f,
                               std::span<Complex> out, unsigned i);

// out = x_i * f.
void multiply_generator_serial(std::span<const Complex> f,
                               std::span<Complex> out, unsigned i);
void multiply_generator_parallel(std::span<const Complex> f,
                                 std::span<Complex> out, unsigned i);

// Below this many coefficients the parallel kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = 1u << 9;

}  // namespace p33::kernels
