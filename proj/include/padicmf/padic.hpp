#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace padicmf {

/// Raised when a computation needs more p-adic precision than its inputs carry.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p^e as an exact integer.
mpz_class ipow(long p, unsigned long e);

/// Largest e with p^e | n (n != 0).
int exact_valuation(const mpz_class& n, long p);

/// Deterministic primality test for the small primes used as p and ell.
bool is_prime(long n);

/**
 * An element of Z/p^k carrying its own precision.
 *
 * The residue is always the canonical representative in [0, p^k).  Binary
 * operations between values of different precision reduce to the smaller
 * one, so precision only ever decreases along a computation.
 */
class PadicApprox {
 public:
  PadicApprox(long p, int k, const mpz_class& value);
  PadicApprox(long p, int k, long value) : PadicApprox(p, k, mpz_class(value)) {}

  static PadicApprox zero(long p, int k) { return {p, k, 0L}; }
  static PadicApprox one(long p, int k) { return {p, k, 1L}; }

  long prime() const { return p_; }
  int precision() const { return k_; }
  const mpz_class& residue() const { return residue_; }
  const mpz_class& modulus() const { return modulus_; }

  /// min(k, v_p(residue)); k for zero.
  int valuation() const;
  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const { return valuation() == 0; }

  /// Representative in (-p^k/2, p^k/2].
  mpz_class balanced() const;

  /// Same element at a lower precision.
  PadicApprox reduced(int k) const;

  PadicApprox inverse() const;
  PadicApprox pow(unsigned long e) const;
  PadicApprox pow(const mpz_class& e) const;
  /// Integer power; negative exponents require a unit.
  PadicApprox ipow_signed(long e) const;

  /// Exact division by p^e; the result has precision k - e.
  PadicApprox divide_by_p_power(int e) const;

  PadicApprox operator-() const;
  PadicApprox& operator+=(const PadicApprox& o);
  PadicApprox& operator-=(const PadicApprox& o);
  PadicApprox& operator*=(const PadicApprox& o);

  friend PadicApprox operator+(PadicApprox a, const PadicApprox& b) { return a += b; }
  friend PadicApprox operator-(PadicApprox a, const PadicApprox& b) { return a -= b; }
  friend PadicApprox operator*(PadicApprox a, const PadicApprox& b) { return a *= b; }
  PadicApprox operator*(long c) const { return {p_, k_, residue_ * c}; }
  PadicApprox operator*(const mpz_class& c) const { return {p_, k_, residue_ * c}; }

  /// Same prime, precision and residue.
  friend bool operator==(const PadicApprox& a, const PadicApprox& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.residue_ == b.residue_;
  }
  /// Equality after reducing both to the smaller precision.
  bool congruent(const PadicApprox& o) const;

  std::string str() const { return residue_.get_str(); }

 private:
  void check_compatible(const PadicApprox& o) const;
  void lower_to(int k);

  long p_;
  int k_;
  mpz_class modulus_;
  mpz_class residue_;
};

/// Teichmuller component times principal unit.
struct UnitDecomp {
  PadicApprox teich;
  PadicApprox principal;
};

/// Unit root of X^2 - aX + c, requires v(a) = 0 and v(c) >= 1.
PadicApprox hensel_unit_root(const PadicApprox& a, const PadicApprox& c);

/// u = teich * principal with teich^(p-1) = 1 (teich = +-1 and principal in 1 + 4Z_2 when p = 2).
UnitDecomp teichmuller(const PadicApprox& u);

/// p-adic logarithm of a principal unit (u = 1 mod p, or mod 4 when p = 2).
PadicApprox plog(const PadicApprox& u);

/// Number of series terms plog sums for a given (p, k, v(u - 1)).
long plog_term_count(long p, int k, int v);

/// Slack in plog(uv) = plog(u) + plog(v): floor(log_p(term count)).
int plog_slack(long p, int k);

/// Roots of X^2 - aX + c when the Newton polygon has two distinct slopes
/// (then both roots lie in Z_p).  Each root carries the precision that
/// survives the rescaling.  Returns nullopt for a single slope of positive
/// valuation, where the roots need not be in Z_p.
struct QuadraticRoots {
  PadicApprox small;  // smaller valuation
  PadicApprox large;
  int small_valuation;
  int large_valuation;
};
std::optional<QuadraticRoots> split_quadratic(const PadicApprox& a, const PadicApprox& c);

/// Valuations of the two roots of X^2 - aX + c read off the Newton polygon.
std::pair<int, int> newton_slopes(const PadicApprox& a, const PadicApprox& c);

}  // namespace padicmf
