#include <benchmark/benchmark.h>

#include <vector>

#include "padicmf/cyclo.hpp"
#include "padicmf/kernels.hpp"
#include "padicmf/padic.hpp"
#include "padicmf/qexp.hpp"

namespace {

using namespace padicmf;

std::vector<mpz_class> random_entries(size_t n, const mpz_class& modulus, unsigned long seed) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  std::vector<mpz_class> out(n);
  for (auto& x : out) x = rng.get_z_range(modulus);
  return out;
}

template <auto Kernel>
void BM_mat_mul(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const mpz_class modulus = ipow(5, 20);
  const auto a = random_entries(n * n, modulus, 1);
  const auto b = random_entries(n * n, modulus, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, n, n, n, modulus));
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void BM_series_mul(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const mpz_class bound = ipow(10, 30);
  const auto a = random_entries(n, bound, 3);
  const auto b = random_entries(n, bound, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b, n));
}

template <auto Kernel>
void BM_mahler(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const mpz_class modulus = ipow(3, 12);
  const auto values = random_entries(n, modulus, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(values, modulus));
}

template <auto Kernel>
void BM_orbit_average(benchmark::State& state) {
  const long p = 3;
  const int m = 2, k = 8;
  const long len = state.range(0);
  const QExpansion f(p, k, [&] {
    auto c = random_entries(static_cast<size_t>(len) + 1, ipow(p, k), 10);
    c[0] = 0;
    return c;
  }());
  std::vector<std::vector<CycloElem>> orbit;
  for (long j = 0; j < 9; ++j) {
    const CycloQExpansion g = circle_act(j, m, f);
    std::vector<CycloElem> row;
    for (long n = 0; n <= len; ++n) row.push_back(g.coeff(n));
    orbit.push_back(std::move(row));
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(orbit, 1));
}

}  // namespace

BENCHMARK(BM_mat_mul<padicmf::kernels::serial::mat_mul>)->Arg(32)->Arg(96);
BENCHMARK(BM_mat_mul<padicmf::kernels::parallel::mat_mul>)->Arg(32)->Arg(96);
BENCHMARK(BM_series_mul<padicmf::kernels::serial::series_mul>)->Arg(500)->Arg(2000);
BENCHMARK(BM_series_mul<padicmf::kernels::parallel::series_mul>)->Arg(500)->Arg(2000);
BENCHMARK(BM_mahler<padicmf::kernels::serial::mahler_transform>)->Arg(243)->Arg(729);
BENCHMARK(BM_mahler<padicmf::kernels::parallel::mahler_transform>)->Arg(243)->Arg(729);
BENCHMARK(BM_orbit_average<padicmf::kernels::serial::orbit_average>)->Arg(200);
BENCHMARK(BM_orbit_average<padicmf::kernels::parallel::orbit_average>)->Arg(200);

BENCHMARK_MAIN();
