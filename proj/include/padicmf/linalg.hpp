#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "padicmf/padic.hpp"

namespace padicmf {

/// A dense row-major matrix over Z/p^k.
class PkMatrix {
 public:
  PkMatrix(long p, int k, size_t rows, size_t cols);
  PkMatrix(long p, int k, size_t rows, size_t cols, std::vector<mpz_class> entries);
  static PkMatrix identity(long p, int k, size_t n);

  long prime() const { return p_; }
  int precision() const { return k_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const mpz_class& modulus() const { return modulus_; }
  const std::vector<mpz_class>& entries() const { return a_; }

  const mpz_class& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void set(size_t i, size_t j, const mpz_class& v);
  std::vector<mpz_class> row(size_t i) const;
  std::vector<mpz_class> column(size_t j) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  PkMatrix transposed() const;
  PkMatrix reduced(int k) const;
  PkMatrix pow(unsigned long e) const;
  PkMatrix scaled(const mpz_class& c) const;
  /// Rank of the reduction mod p.
  size_t rank_mod_p() const;

  friend PkMatrix operator*(const PkMatrix& a, const PkMatrix& b);
  friend PkMatrix operator+(const PkMatrix& a, const PkMatrix& b);
  friend PkMatrix operator-(const PkMatrix& a, const PkMatrix& b);
  friend bool operator==(const PkMatrix& a, const PkMatrix& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string str() const;

 private:
  long p_;
  int k_;
  size_t rows_;
  size_t cols_;
  mpz_class modulus_;
  std::vector<mpz_class> a_;
};

/**
 * Howell normal form of the row module of `a` over Z/p^k.
 *
 * Every row has a leading entry p^e, entries above a leading p^e are reduced
 * mod p^e, and the rows whose first c entries vanish generate the part of the
 * row module with that property.  Zero rows are dropped, so two generating
 * sets span the same module exactly when their forms are equal.
 */
PkMatrix howell_form(const PkMatrix& a);

/// Leading column and leading valuation of each Howell row.
struct HowellPivot {
  size_t column;
  int valuation;
};
std::vector<HowellPivot> howell_pivots(const PkMatrix& h);

/// Remainder of `v` after reduction by a Howell form; zero iff v is in the row module.
std::vector<mpz_class> howell_reduce(const PkMatrix& h, std::vector<mpz_class> v);

/// Some x with x * b = v (row vectors), or nullopt when v is outside the row module.
std::optional<std::vector<mpz_class>> solve_left(const PkMatrix& b, const std::vector<mpz_class>& v);

/// Generators of {x : x * b = 0}, as rows in Howell form.
PkMatrix left_kernel(const PkMatrix& b);
/// Generators of {x : b * x = 0}, as rows in Howell form.
PkMatrix right_kernel(const PkMatrix& b);

/// Coefficients c_0..c_n of det(x I - a) (c_n = 1), division-free.
std::vector<mpz_class> charpoly(const PkMatrix& a);

}  // namespace padicmf
