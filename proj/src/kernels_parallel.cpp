#include <omp.h>

#include <exception>
#include <optional>
#include <stdexcept>

#include "padicmf/kernels.hpp"

namespace padicmf::kernels {

int thread_count() { return omp_get_max_threads(); }

namespace {

// Exceptions may not cross an OpenMP region; keep the first one and rethrow.
class FirstError {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(padicmf_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

namespace parallel {

std::vector<mpz_class> mat_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t rows,
                               size_t inner, size_t cols, const mpz_class& modulus) {
  if (a.size() != rows * inner || b.size() != inner * cols) throw std::invalid_argument("mat_mul: shape mismatch");
  std::vector<mpz_class> out(rows * cols, mpz_class(0));
  const long total = static_cast<long>(rows * cols);
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    const size_t i = static_cast<size_t>(idx) / cols, j = static_cast<size_t>(idx) % cols;
    mpz_class acc = 0;
    for (size_t t = 0; t < inner; ++t) mpz_addmul(acc.get_mpz_t(), a[i * inner + t].get_mpz_t(), b[t * cols + j].get_mpz_t());
    mpz_fdiv_r(out[static_cast<size_t>(idx)].get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
  }
  return out;
}

std::vector<mpz_class> series_mul(std::span<const mpz_class> a, std::span<const mpz_class> b, size_t len) {
  std::vector<mpz_class> out(len, mpz_class(0));
  const long n_out = static_cast<long>(len);
#pragma omp parallel for schedule(dynamic, 16)
  for (long n = 0; n < n_out; ++n) {
    mpz_class acc = 0;
    const long lo = std::max<long>(0, n - static_cast<long>(b.size()) + 1);
    const long hi = std::min<long>(n, static_cast<long>(a.size()) - 1);
    for (long i = lo; i <= hi; ++i)
      mpz_addmul(acc.get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t(), b[static_cast<size_t>(n - i)].get_mpz_t());
    out[static_cast<size_t>(n)] = std::move(acc);
  }
  return out;
}

std::vector<mpz_class> mahler_transform(std::span<const mpz_class> values, const mpz_class& modulus) {
  std::vector<mpz_class> out(values.size());
  const long count = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long n = 0; n < count; ++n) {
    mpz_class binom = 1;  // C(n, j), exact
    mpz_class acc = 0;
    for (long j = 0; j <= n; ++j) {
      if ((n - j) % 2 == 0) mpz_addmul(acc.get_mpz_t(), binom.get_mpz_t(), values[static_cast<size_t>(j)].get_mpz_t());
      else mpz_submul(acc.get_mpz_t(), binom.get_mpz_t(), values[static_cast<size_t>(j)].get_mpz_t());
      binom *= (n - j);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    mpz_fdiv_r(out[static_cast<size_t>(n)].get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
  }
  return out;
}

std::vector<CycloElem> orbit_average(std::span<const std::vector<CycloElem>> orbit, long a) {
  if (orbit.empty()) throw std::invalid_argument("orbit_average: empty orbit");
  const size_t len = orbit.front().size();
  for (const auto& row : orbit)
    if (row.size() != len) throw std::invalid_argument("orbit_average: ragged orbit");
  std::vector<std::optional<CycloElem>> slots(len);
  FirstError guard;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(len); ++i) {
    guard.run([&] {
      std::vector<const CycloElem*> column;
      column.reserve(orbit.size());
      for (const auto& row : orbit) column.push_back(&row[static_cast<size_t>(i)]);
      slots[static_cast<size_t>(i)] = cyclo_average(std::span<const CycloElem* const>(column), a);
    });
  }
  guard.rethrow();
  std::vector<CycloElem> out;
  out.reserve(len);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace parallel
}  // namespace padicmf::kernels
