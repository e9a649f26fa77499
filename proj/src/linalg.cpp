#include "padicmf/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "padicmf/kernels.hpp"

namespace padicmf {

namespace {

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

using Row = std::vector<mpz_class>;

bool row_is_zero(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](const mpz_class& c) { return c == 0; });
}

void axpy(Row& dst, const mpz_class& q, const Row& src, const mpz_class& modulus) {
  for (size_t j = 0; j < dst.size(); ++j) {
    if (src[j] == 0) continue;
    mpz_submul(dst[j].get_mpz_t(), q.get_mpz_t(), src[j].get_mpz_t());
    mpz_fdiv_r(dst[j].get_mpz_t(), dst[j].get_mpz_t(), modulus.get_mpz_t());
  }
}

}  // namespace

PkMatrix::PkMatrix(long p, int k, size_t rows, size_t cols)
    : PkMatrix(p, k, rows, cols, std::vector<mpz_class>(rows * cols, mpz_class(0))) {}

PkMatrix::PkMatrix(long p, int k, size_t rows, size_t cols, std::vector<mpz_class> entries)
    : p_(p), k_(k), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (p < 2 || k < 1) throw std::invalid_argument("PkMatrix: bad (p, k)");
  if (a_.size() != rows * cols) throw std::invalid_argument("PkMatrix: entry count does not match the shape");
  modulus_ = ipow(p, static_cast<unsigned long>(k));
  for (auto& x : a_) x = mod_nonneg(x, modulus_);
}

PkMatrix PkMatrix::identity(long p, int k, size_t n) {
  PkMatrix m(p, k, n, n);
  for (size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

void PkMatrix::set(size_t i, size_t j, const mpz_class& v) { a_.at(i * cols_ + j) = mod_nonneg(v, modulus_); }

std::vector<mpz_class> PkMatrix::row(size_t i) const {
  return std::vector<mpz_class>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
}

std::vector<mpz_class> PkMatrix::column(size_t j) const {
  std::vector<mpz_class> out(rows_);
  for (size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

bool PkMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& c) { return c == 0; });
}

PkMatrix PkMatrix::transposed() const {
  PkMatrix t(p_, k_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.a_[j * rows_ + i] = at(i, j);
  return t;
}

PkMatrix PkMatrix::reduced(int k) const {
  if (k > k_) throw PrecisionError("PkMatrix::reduced: cannot raise precision");
  return PkMatrix(p_, k, rows_, cols_, a_);
}

PkMatrix PkMatrix::pow(unsigned long e) const {
  if (!is_square()) throw std::invalid_argument("PkMatrix::pow: matrix is not square");
  PkMatrix result = identity(p_, k_, rows_);
  PkMatrix base = *this;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

PkMatrix PkMatrix::scaled(const mpz_class& c) const {
  std::vector<mpz_class> out(a_.size());
  for (size_t i = 0; i < a_.size(); ++i) out[i] = a_[i] * c;
  return PkMatrix(p_, k_, rows_, cols_, std::move(out));
}

size_t PkMatrix::rank_mod_p() const {
  std::vector<std::vector<long>> m(rows_, std::vector<long>(cols_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m[i][j] = mpz_fdiv_ui(at(i, j).get_mpz_t(), static_cast<unsigned long>(p_));
  size_t rank = 0;
  for (size_t c = 0; c < cols_ && rank < rows_; ++c) {
    size_t piv = rank;
    while (piv < rows_ && m[piv][c] == 0) ++piv;
    if (piv == rows_) continue;
    std::swap(m[piv], m[rank]);
    const long inv = PadicApprox(p_, 1, m[rank][c]).inverse().residue().get_si();
    for (size_t i = 0; i < rows_; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const long f = m[i][c] * inv % p_;
      for (size_t j = 0; j < cols_; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % p_ + p_) % p_;
    }
    ++rank;
  }
  return rank;
}

PkMatrix operator*(const PkMatrix& a, const PkMatrix& b) {
  if (a.p_ != b.p_ || a.cols_ != b.rows_) throw std::invalid_argument("PkMatrix: incompatible product");
  const int k = std::min(a.k_, b.k_);
  const mpz_class modulus = ipow(a.p_, static_cast<unsigned long>(k));
  return PkMatrix(a.p_, k, a.rows_, b.cols_,
                  kernels::parallel::mat_mul(a.a_, b.a_, a.rows_, a.cols_, b.cols_, modulus));
}

PkMatrix operator+(const PkMatrix& a, const PkMatrix& b) {
  if (a.p_ != b.p_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("PkMatrix: shape mismatch");
  std::vector<mpz_class> out(a.a_.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.a_[i] + b.a_[i];
  return PkMatrix(a.p_, std::min(a.k_, b.k_), a.rows_, a.cols_, std::move(out));
}

PkMatrix operator-(const PkMatrix& a, const PkMatrix& b) { return a + b.scaled(-1); }

std::string PkMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

PkMatrix howell_form(const PkMatrix& a) {
  const long p = a.prime();
  const int k = a.precision();
  const mpz_class& modulus = a.modulus();
  std::vector<Row> pool;
  for (size_t i = 0; i < a.rows(); ++i) {
    Row r = a.row(i);
    if (!row_is_zero(r)) pool.push_back(std::move(r));
  }
  std::vector<Row> out;
  std::vector<std::pair<size_t, mpz_class>> pivots;  // column, p^e
  for (size_t c = 0; c < a.cols() && !pool.empty(); ++c) {
    int best_v = k;
    size_t best = pool.size();
    for (size_t i = 0; i < pool.size(); ++i) {
      if (pool[i][c] == 0) continue;
      const int v = exact_valuation(pool[i][c], p);
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    if (best == pool.size()) continue;
    Row r = std::move(pool[best]);
    pool.erase(pool.begin() + static_cast<long>(best));
    const mpz_class pe = ipow(p, static_cast<unsigned long>(best_v));
    mpz_class unit;
    mpz_divexact(unit.get_mpz_t(), r[c].get_mpz_t(), pe.get_mpz_t());
    const mpz_class inv = PadicApprox(p, k, unit).inverse().residue();
    for (auto& x : r) x = mod_nonneg(x * inv, modulus);
    for (auto& other : pool) {
      if (other[c] == 0) continue;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), other[c].get_mpz_t(), pe.get_mpz_t());
      axpy(other, q, r, modulus);
    }
    if (best_v > 0) {
      Row ann(r.size());
      const mpz_class scale = ipow(p, static_cast<unsigned long>(k - best_v));
      for (size_t j = 0; j < r.size(); ++j) ann[j] = mod_nonneg(r[j] * scale, modulus);
      if (!row_is_zero(ann)) pool.push_back(std::move(ann));
    }
    std::erase_if(pool, row_is_zero);
    pivots.emplace_back(c, pe);
    out.push_back(std::move(r));
  }
  for (size_t j = 0; j < out.size(); ++j) {
    const auto& [c, pe] = pivots[j];
    for (size_t i = 0; i < j; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), out[i][c].get_mpz_t(), pe.get_mpz_t());
      if (q != 0) axpy(out[i], q, out[j], modulus);
    }
  }
  std::vector<mpz_class> flat;
  flat.reserve(out.size() * a.cols());
  for (auto& r : out) std::move(r.begin(), r.end(), std::back_inserter(flat));
  return PkMatrix(p, k, out.size(), a.cols(), std::move(flat));
}

std::vector<HowellPivot> howell_pivots(const PkMatrix& h) {
  std::vector<HowellPivot> out;
  for (size_t i = 0; i < h.rows(); ++i) {
    size_t c = 0;
    while (c < h.cols() && h.at(i, c) == 0) ++c;
    if (c == h.cols()) throw std::invalid_argument("howell_pivots: zero row");
    out.push_back({c, exact_valuation(h.at(i, c), h.prime())});
  }
  return out;
}

std::vector<mpz_class> howell_reduce(const PkMatrix& h, std::vector<mpz_class> v) {
  if (v.size() != h.cols()) throw std::invalid_argument("howell_reduce: length mismatch");
  for (auto& x : v) x = mod_nonneg(x, h.modulus());
  const auto pivots = howell_pivots(h);
  for (size_t j = 0; j < h.rows(); ++j) {
    const mpz_class pe = ipow(h.prime(), static_cast<unsigned long>(pivots[j].valuation));
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v[pivots[j].column].get_mpz_t(), pe.get_mpz_t());
    if (q != 0) axpy(v, q, h.row(j), h.modulus());
  }
  return v;
}

namespace {

PkMatrix augmented_with_identity(const PkMatrix& b) {
  const size_t r = b.rows(), n = b.cols();
  PkMatrix aug(b.prime(), b.precision(), r, n + r);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < n; ++j) aug.set(i, j, b.at(i, j));
    aug.set(i, n + i, 1);
  }
  return aug;
}

}  // namespace

std::optional<std::vector<mpz_class>> solve_left(const PkMatrix& b, const std::vector<mpz_class>& v) {
  if (v.size() != b.cols()) throw std::invalid_argument("solve_left: length mismatch");
  const PkMatrix h = howell_form(augmented_with_identity(b));
  std::vector<mpz_class> w(b.cols() + b.rows(), mpz_class(0));
  std::copy(v.begin(), v.end(), w.begin());
  w = howell_reduce(h, std::move(w));
  for (size_t j = 0; j < b.cols(); ++j)
    if (w[j] != 0) return std::nullopt;
  std::vector<mpz_class> x(b.rows());
  for (size_t i = 0; i < b.rows(); ++i) x[i] = mod_nonneg(-w[b.cols() + i], b.modulus());
  return x;
}

PkMatrix left_kernel(const PkMatrix& b) {
  const size_t n = b.cols(), r = b.rows();
  const PkMatrix h = howell_form(augmented_with_identity(b));
  std::vector<mpz_class> flat;
  size_t count = 0;
  for (size_t i = 0; i < h.rows(); ++i) {
    bool left_zero = true;
    for (size_t j = 0; j < n && left_zero; ++j) left_zero = h.at(i, j) == 0;
    if (!left_zero) continue;
    for (size_t j = 0; j < r; ++j) flat.push_back(h.at(i, n + j));
    ++count;
  }
  return howell_form(PkMatrix(b.prime(), b.precision(), count, r, std::move(flat)));
}

PkMatrix right_kernel(const PkMatrix& b) { return left_kernel(b.transposed()); }

std::vector<mpz_class> charpoly(const PkMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("charpoly: matrix is not square");
  const size_t n = a.rows();
  const mpz_class& modulus = a.modulus();
  if (n == 0) return {mpz_class(1)};
  // Berkowitz: descending coefficients of det(x I - A_r) for the leading r x r blocks.
  std::vector<mpz_class> poly{mpz_class(1), mod_nonneg(-a.at(0, 0), modulus)};
  for (size_t r = 1; r < n; ++r) {
    // A_{r+1} = [[A_r, S], [R, a_rr]].
    std::vector<mpz_class> toeplitz(r + 2);
    toeplitz[0] = 1;
    toeplitz[1] = mod_nonneg(-a.at(r, r), modulus);
    std::vector<mpz_class> s(r);
    for (size_t i = 0; i < r; ++i) s[i] = a.at(i, r);
    for (size_t t = 2; t < r + 2; ++t) {
      mpz_class dot = 0;
      for (size_t i = 0; i < r; ++i) dot += a.at(r, i) * s[i];
      toeplitz[t] = mod_nonneg(-dot, modulus);
      std::vector<mpz_class> next(r, mpz_class(0));
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) next[i] += a.at(i, j) * s[j];
        next[i] = mod_nonneg(next[i], modulus);
      }
      s = std::move(next);
    }
    std::vector<mpz_class> out(r + 2, mpz_class(0));
    for (size_t i = 0; i < r + 2; ++i) {
      for (size_t j = 0; j <= std::min(i, r); ++j) out[i] += toeplitz[i - j] * poly[j];
      out[i] = mod_nonneg(out[i], modulus);
    }
    poly = std::move(out);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

}  // namespace padicmf
