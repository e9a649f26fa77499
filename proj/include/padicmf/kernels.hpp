#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "padicmf/cyclo.hpp"

// Data-parallel inner loops.  Each kernel exists twice with identical
// signatures: `serial` is the reference (and, where it matters, uses a
// different algorithm), `parallel` is the OpenMP version the library calls.
// Tests check they agree; bench/ compares their speed.
namespace padicmf::kernels {

namespace serial {

/// Row-major (rows x inner) * (inner x cols), entries reduced mod `modulus`.
std::vector<mpz_class> mat_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t rows,
                               size_t inner, size_t cols, const mpz_class& modulus);

/// Exact product of two power series, truncated to `len` terms.
std::vector<mpz_class> series_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t len);

/// Mahler coefficients c_0..c_{n-1} from the values f(0..n-1), mod `modulus`.
/// Iterated forward differences.
std::vector<mpz_class> mahler_transform(std::span<const mpz_class> values, const mpz_class& modulus);

/// out[i] = cyclo_average over j of orbit[j][i], weight a.
std::vector<CycloElem> orbit_average(std::span<const std::vector<CycloElem>> orbit, long a);

}  // namespace serial

namespace parallel {

std::vector<mpz_class> mat_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t rows,
                               size_t inner, size_t cols, const mpz_class& modulus);

std::vector<mpz_class> series_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t len);

/// Binomial-sum formula c_n = sum_j (-1)^(n-j) C(n,j) f(j), one n per task.
std::vector<mpz_class> mahler_transform(std::span<const mpz_class> values, const mpz_class& modulus);

std::vector<CycloElem> orbit_average(std::span<const std::vector<CycloElem>> orbit, long a);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace padicmf::kernels
