#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "padicmf/padic.hpp"

namespace padicmf {

/// Euler phi of p^m (1 when m = 0).
long cyclo_degree(long p, int m);

/**
 * An element of Z[zeta]/p^k with zeta a primitive p^m-th root of unity.
 *
 * Stored in the power basis 1, zeta, ..., zeta^(phi-1) modulo the p^m-th
 * cyclotomic polynomial 1 + x^(p^(m-1)) + ... + x^((p-1)p^(m-1)).  Level 0
 * is the base ring Z/p^k itself.
 */
class CycloElem {
 public:
  CycloElem(long p, int m, int k);
  CycloElem(long p, int m, int k, std::vector<mpz_class> coeffs);

  static CycloElem scalar(int m, const PadicApprox& c);
  static CycloElem zeta_power(long p, int m, int k, long e);

  long prime() const { return p_; }
  int level() const { return m_; }
  int precision() const { return k_; }
  long order() const { return order_; }
  const mpz_class& modulus() const { return modulus_; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// The constant coefficient when every other coefficient vanishes.
  std::optional<PadicApprox> as_scalar() const;

  CycloElem reduced(int k) const;
  CycloElem divide_by_p_power(int e) const;
  /// zeta^e * this, computed by index rotation.
  CycloElem mul_zeta_power(long e) const;
  CycloElem scaled(const PadicApprox& c) const;

  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(const CycloElem& a, const CycloElem& b);

  friend bool operator==(const CycloElem& a, const CycloElem& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }

  /// Reduce a vector indexed by exponents 0..len-1 into the power basis, mod p^k.
  static std::vector<mpz_class> fold(long p, int m, std::vector<mpz_class> by_exponent, const mpz_class& modulus);

 private:
  void check_same_ring(const CycloElem& o) const;
  void normalize();

  long p_;
  int m_;
  int k_;
  long order_;  // p^m
  mpz_class modulus_;
  std::vector<mpz_class> coeffs_;
};

/**
 * (1/p^m) * sum_j zeta^(-a j) * values[j] over j in [0, p^m).
 *
 * All values must share (p, m, k) with k > m.  The division is exact in the
 * power basis; the result carries precision k - m.  Throws std::domain_error
 * naming the first coefficient that is not divisible by p^m.
 */
CycloElem cyclo_average(std::span<const CycloElem> values, long a);
CycloElem cyclo_average(std::span<const CycloElem* const> values, long a);

}  // namespace padicmf
