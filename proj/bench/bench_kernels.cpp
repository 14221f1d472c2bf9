// Serial reference vs OpenMP kernels on dense elements of 2^n coefficients.
#include <benchmark/benchmark.h>

#include <vector>

#include "p33/kernels.hpp"
#include "p33/pachner.hpp"
#include "p33/random.hpp"

namespace {

using p33::kernels::Complex;

std::vector<Complex> random_coeffs(p33::Rng& rng, unsigned n) {
  std::vector<Complex> v(std::size_t{1} << n);
  for (Complex& c : v) c = rng.in_disc();
  return v;
}

template <auto Kernel>
void multiply(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  p33::Rng rng(1);
  const auto a = random_coeffs(rng, n), b = random_coeffs(rng, n);
  std::vector<Complex> out(a.size());
  for (auto _ : state) {
    Kernel(a, b, out, n);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(static_cast<int64_t>(a.size()));
}

template <auto Kernel>
void derivative(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  p33::Rng rng(2);
  const auto f = random_coeffs(rng, n);
  std::vector<Complex> out(f.size());
  for (auto _ : state) {
    for (unsigned i = 0; i < n; ++i) Kernel(f, out, i);
    benchmark::DoNotOptimize(out.data());
  }
}

void pachner(benchmark::State& state) {
  p33::Rng rng(3);
  const auto& scene = p33::PachnerScene::standard();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p33::run_pachner(p33::random_cocycle(rng, scene.complex())));
  }
}

}  // namespace

BENCHMARK(multiply<p33::kernels::multiply_serial>)->Name("multiply/serial")->DenseRange(6, 14, 2);
BENCHMARK(multiply<p33::kernels::multiply_parallel>)->Name("multiply/parallel")->DenseRange(6, 14, 2);
BENCHMARK(derivative<p33::kernels::left_derivative_serial>)->Name("left_derivative/serial")->DenseRange(8, 16, 4);
BENCHMARK(derivative<p33::kernels::left_derivative_parallel>)->Name("left_derivative/parallel")->DenseRange(8, 16, 4);
BENCHMARK(derivative<p33::kernels::right_derivative_serial>)->Name("right_derivative/serial")->DenseRange(8, 16, 4);
BENCHMARK(derivative<p33::kernels::right_derivative_parallel>)->Name("right_derivative/parallel")->DenseRange(8, 16, 4);
BENCHMARK(pachner)->Name("pachner/end_to_end")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
