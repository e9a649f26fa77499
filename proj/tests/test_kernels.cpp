#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>
#include <omp.h>

#include "padicmf/kernels.hpp"
#include "padicmf/qexp.hpp"

using namespace padicmf;

namespace {

std::vector<mpz_class> random_entries(gmp_randclass& rng, size_t n, const mpz_class& bound) {
  std::vector<mpz_class> out(n);
  for (auto& x : out) x = rng.get_z_range(bound);
  return out;
}

}  // namespace

TEST_CASE("mat_mul serial and parallel agree") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(1);
  const mpz_class mod = ipow(7, 9);
  for (size_t n : {1UL, 3UL, 17UL, 40UL}) {
    const auto a = random_entries(rng, n * (n + 2), mod);
    const auto b = random_entries(rng, (n + 2) * 5, mod);
    const auto s = kernels::serial::mat_mul(a, b, n, n + 2, 5, mod);
    REQUIRE(s == kernels::parallel::mat_mul(a, b, n, n + 2, 5, mod));
    // entry (0, 0) by hand
    mpz_class e = 0;
    for (size_t t = 0; t < n + 2; ++t) e += a[t] * b[t * 5];
    REQUIRE(s[0] == e % mod);
  }
}

TEST_CASE("series_mul serial and parallel agree") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(2);
  const mpz_class bound = ipow(10, 25);
  for (size_t len : {1UL, 10UL, 333UL}) {
    const auto a = random_entries(rng, len, bound);
    const auto b = random_entries(rng, len, bound);
    const auto s = kernels::serial::series_mul(a, b, len);
    REQUIRE(s == kernels::parallel::series_mul(a, b, len));
    mpz_class last = 0;
    for (size_t i = 0; i < len; ++i) last += a[i] * b[len - 1 - i];
    REQUIRE(s.back() == last);
  }
}

TEST_CASE("mahler_transform: differences and the binomial formula agree") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(3);
  for (long p : {3L, 5L}) {
    const mpz_class mod = ipow(p, 6);
    const auto v = random_entries(rng, 200, mod);
    REQUIRE(kernels::serial::mahler_transform(v, mod) == kernels::parallel::mahler_transform(v, mod));
  }
}

TEST_CASE("orbit_average serial and parallel agree") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(4);
  const long p = 3;
  const int m = 2;
  const int k = 5;
  std::vector<mpz_class> c(61);
  for (size_t n = 1; n < c.size(); ++n) c[n] = rng.get_z_range(ipow(p, k));
  const QExpansion f(p, k, std::move(c));
  std::vector<std::vector<CycloElem>> orbit;
  for (long j = 0; j < 9; ++j) {
    const CycloQExpansion g = circle_act(j, m, f);
    std::vector<CycloElem> row;
    for (long n = 0; n <= g.truncation(); ++n) row.push_back(g.coeff(n));
    orbit.push_back(std::move(row));
  }
  for (long a = 0; a < 9; ++a) REQUIRE(kernels::serial::orbit_average(orbit, a) == kernels::parallel::orbit_average(orbit, a));
}

TEST_CASE("thread count follows the OpenMP setting") {
  omp_set_num_threads(2);
  CHECK(kernels::thread_count() == 2);
  const mpz_class mod = ipow(5, 4);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(5);
  const auto a = random_entries(rng, 64, mod);
  CHECK(kernels::parallel::mat_mul(a, a, 8, 8, 8, mod) == kernels::serial::mat_mul(a, a, 8, 8, 8, mod));
  omp_set_num_threads(1);
  CHECK(kernels::thread_count() == 1);
}
