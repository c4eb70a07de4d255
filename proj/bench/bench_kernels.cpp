// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dnoise/env_models.hpp"
#include "dnoise/linalg.hpp"
#include "dnoise/state.hpp"
#include "dnoise/sweep.hpp"

using namespace dnoise;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex{g(rng), g(rng)};
  return m;
}

DensityMatrix random_state(std::size_t qubits, std::uint64_t seed) {
  const std::size_t n = std::size_t{1} << qubits;
  const ComplexMatrix a = random_matrix(n, seed);
  ComplexMatrix rho = a * adjoint(a);
  rho *= 1.0 / trace(rho).real();
  return DensityMatrix(rho, std::vector<std::size_t>(qubits, 2));
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix a = random_matrix(n, seed);
  return herm_expm(0.5 * (a + adjoint(a)), 1.0);
}

void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
}

void BM_matmul_serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::matmul(a, b));
}

void BM_apply_unitary(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_state(q, 3);
  const ComplexMatrix u = random_unitary(4, 4);
  const std::size_t targets[] = {0, q - 1};
  for (auto _ : state) benchmark::DoNotOptimize(apply_unitary(rho, u, targets));
}

void BM_apply_unitary_serial(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  const DensityMatrix rho = random_state(q, 3);
  const ComplexMatrix u = random_unitary(4, 4);
  const std::size_t targets[] = {0, q - 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::apply_unitary(rho.matrix(), u, rho.dims(), targets));
  }
}

std::vector<double> time_grid(std::int64_t count) {
  return GridSpec{0.0, 40.0, static_cast<int>(count)}.points();
}

SpinBathSpec nv_bath() {
  return load_bath_file(bundled_bath_path(), 0.1, zeeman_frequency(kGammaCarbon13, 0.1));
}

void BM_bath_factors(benchmark::State& state) {
  const SpinBathSpec bath = nv_bath();
  const auto times = time_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bath_factors(bath, times));
}

void BM_bath_factors_serial(benchmark::State& state) {
  const SpinBathSpec bath = nv_bath();
  const auto times = time_grid(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::bath_factors(bath, times));
}

}  // namespace

BENCHMARK(BM_matmul)->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_matmul_serial)->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_apply_unitary)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_apply_unitary_serial)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_bath_factors)->Arg(401)->Arg(4001);
BENCHMARK(BM_bath_factors_serial)->Arg(401)->Arg(4001);

BENCHMARK_MAIN();
