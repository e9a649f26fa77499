#include "padicmf/kernels.hpp"

#include <stdexcept>

namespace padicmf::kernels::serial {

std::vector<mpz_class> mat_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t rows,
                               size_t inner, size_t cols, const mpz_class& modulus) {
  if (a.size() != rows * inner || b.size() != inner * cols) throw std::invalid_argument("mat_mul: shape mismatch");
  std::vector<mpz_class> out(rows * cols, mpz_class(0));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t t = 0; t < inner; ++t) {
      const mpz_class& x = a[i * inner + t];
      if (x == 0) continue;
      for (size_t j = 0; j < cols; ++j) out[i * cols + j] += x * b[t * cols + j];
    }
    for (size_t j = 0; j < cols; ++j)
      mpz_fdiv_r(out[i * cols + j].get_mpz_t(), out[i * cols + j].get_mpz_t(), modulus.get_mpz_t());
  }
  return out;
}

std::vector<mpz_class> series_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t len) {
  std::vector<mpz_class> out(len, mpz_class(0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<mpz_class> mahler_transform(std::span<const mpz_class> values, const mpz_class& modulus) {
  std::vector<mpz_class> diff(values.begin(), values.end());
  std::vector<mpz_class> out(values.size());
  for (size_t n = 0; n < values.size(); ++n) {
    mpz_fdiv_r(out[n].get_mpz_t(), diff[0].get_mpz_t(), modulus.get_mpz_t());
    for (size_t j = 0; j + 1 < diff.size() - n; ++j) {
      diff[j] = diff[j + 1] - diff[j];
      mpz_fdiv_r(diff[j].get_mpz_t(), diff[j].get_mpz_t(), modulus.get_mpz_t());
    }
  }
  return out;
}

std::vector<CycloElem> orbit_average(std::span<const std::vector<CycloElem>> orbit, long a) {
  if (orbit.empty()) throw std::invalid_argument("orbit_average: empty orbit");
  const size_t len = orbit.front().size();
  std::vector<CycloElem> out;
  out.reserve(len);
  std::vector<CycloElem> column;
  for (size_t i = 0; i < len; ++i) {
    column.clear();
    for (const auto& row : orbit) column.push_back(row.at(i));
    out.push_back(cyclo_average(column, a));
  }
  return out;
}

}  // namespace padicmf::kernels::serial
