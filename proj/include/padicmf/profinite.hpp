#pragma once

#include <gmpxx.h>

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "padicmf/padic.hpp"

namespace padicmf {

enum class Domain { Zp, ZpUnits };

/**
 * A Z/p^k-valued function on Z_p (or Z_p^x) that is constant on cosets of
 * p^m Z_p.  The table is indexed by residues mod p^m; for the units domain
 * the non-unit slots are held at zero.
 *
 * A function on Z_p also records the constant value it takes on
 * Q_p \ Z_p, which is what multiplication on Kirillov functions sees at
 * negative valuation.  `indicator` and `coordinate` extend by zero;
 * `constant` extends by its value.
 */
class LocConstFn {
 public:
  LocConstFn(long p, int k, int level, Domain domain, std::vector<mpz_class> table, mpz_class outside = 0);

  static LocConstFn constant(long p, int k, const mpz_class& c);
  /// x -> x mod p^k on Z_p (level k).
  static LocConstFn coordinate(long p, int k);
  static LocConstFn from_function(long p, int k, int level, Domain domain,
                                  const std::function<mpz_class(const mpz_class&)>& f);

  long prime() const { return p_; }
  int precision() const { return k_; }
  int level() const { return level_; }
  Domain domain() const { return domain_; }
  const mpz_class& modulus() const { return modulus_; }
  std::span<const mpz_class> table() const { return table_; }
  PadicApprox outside() const { return {p_, k_, outside_}; }

  /// Value at any integer lift x (a unit when the domain is Z_p^x).
  PadicApprox operator()(const mpz_class& x) const;
  PadicApprox operator()(long x) const { return (*this)(mpz_class(x)); }
  const mpz_class& at_residue(const mpz_class& x) const;

  /// Same function tabulated at a finer level.
  LocConstFn refined(int level) const;
  /// Zero everywhere, including off Z_p.
  bool vanishes() const;

  friend LocConstFn operator*(const LocConstFn& f, const LocConstFn& g);
  friend LocConstFn operator+(const LocConstFn& f, const LocConstFn& g);
  friend bool operator==(const LocConstFn& f, const LocConstFn& g);

 private:
  long p_;
  int k_;
  int level_;
  Domain domain_;
  mpz_class modulus_;
  mpz_class level_modulus_;
  std::vector<mpz_class> table_;
  mpz_class outside_;
};

/// 1 on a + p^m Z_p, 0 elsewhere on Q_p.
LocConstFn indicator(long p, int k, const mpz_class& a, int m);

/// c_n = sum_{j<=n} (-1)^(n-j) C(n,j) f(j) for n < count.  For a level-m
/// function c_n vanishes mod p^k once n >= p^m k.
std::vector<PadicApprox> mahler_coeffs(const LocConstFn& f, long count);
/// sum_n c_n C(x, n) for an integer lift x >= 0.
PadicApprox mahler_eval(std::span<const PadicApprox> coeffs, const mpz_class& x);

/**
 * A smooth character of Q_p^x: a multiplicative table on (Z/p^m)^x and the
 * value at p.  The value at p is the geometric-Frobenius eigenvalue and may
 * be a non-unit; it carries its own precision.
 */
class SmoothChar {
 public:
  /// Validates chi(1) = 1 and multiplicativity on every pair of units.
  static SmoothChar from_table(long p, int k, int conductor, std::vector<mpz_class> unit_table, PadicApprox value_at_p);
  static SmoothChar unramified(long p, int k, PadicApprox value_at_p);
  /// omega^i on units (omega the Teichmuller character), given value at p.
  static SmoothChar teichmuller_power(long p, int k, long i, PadicApprox value_at_p);

  long prime() const { return p_; }
  int precision() const { return k_; }
  int conductor() const { return conductor_; }
  const PadicApprox& at_p() const { return value_at_p_; }
  std::span<const mpz_class> unit_table() const { return table_; }
  PadicApprox on_unit(const mpz_class& u) const;
  bool is_unramified() const;

  SmoothChar with_value_at_p(PadicApprox v) const;
  /// Same character tabulated mod p^level (level >= conductor).
  SmoothChar raised_to(int level) const;
  friend SmoothChar operator*(const SmoothChar& a, const SmoothChar& b);
  /// Equal as characters: tables agree at a common level and values at p agree.
  friend bool operator==(const SmoothChar& a, const SmoothChar& b);
  /// True when the unit tables agree (values at p ignored).
  bool same_unit_part(const SmoothChar& o) const;

  /// "u:value;..." over units mod p^conductor, ascending u.
  std::string table_string() const;

 private:
  SmoothChar(long p, int k, int conductor, std::vector<mpz_class> table, PadicApprox value_at_p);

  long p_;
  int k_;
  int conductor_;
  std::vector<mpz_class> table_;  // length p^conductor; non-units 0
  PadicApprox value_at_p_;
};

/// A point p^v * unit of Q_p^x.
struct QpPoint {
  int v;
  PadicApprox unit;
};

/// chi(p)^v * chi(unit).
PadicApprox char_eval(const SmoothChar& chi, const QpPoint& x);

/// coefficient * chi(p)^v * v^a * chi(zeta) * chi(t) * log(t)^b, where unit = zeta * t
/// splits into Teichmuller and principal parts.
struct CharTail {
  SmoothChar chi;
  int a = 0;
  int b = 0;
  PadicApprox coefficient;

  /// Same (chi, a, b) shape, coefficient ignored.
  bool same_shape(const CharTail& o) const { return a == o.a && b == o.b && chi == o.chi; }
};

PadicApprox chi_ab_eval(const CharTail& tail, const QpPoint& x);

}  // namespace padicmf
