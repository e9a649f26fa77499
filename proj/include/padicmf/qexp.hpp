#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "padicmf/cyclo.hpp"
#include "padicmf/kirillov.hpp"
#include "padicmf/profinite.hpp"

namespace padicmf {

/**
 * A cuspidal q-expansion a_1 q + ... + a_N q^N with coefficients in Z/p^k.
 *
 * Coefficients are indexed by n; slot 0 exists and is always zero.
 */
class QExpansion {
 public:
  /// `coeffs[n]` is a_n for n = 0..N; a_0 must vanish mod p^k.
  QExpansion(long p, int k, std::vector<mpz_class> coeffs);
  static QExpansion zero(long p, int k, long N);

  long prime() const { return p_; }
  int precision() const { return k_; }
  long truncation() const { return static_cast<long>(a_.size()) - 1; }
  const mpz_class& modulus() const { return modulus_; }
  const std::vector<mpz_class>& residues() const { return a_; }
  const mpz_class& residue(long n) const { return a_.at(static_cast<size_t>(n)); }
  PadicApprox coeff(long n) const { return {p_, k_, residue(n)}; }

  bool is_zero() const;
  QExpansion reduced(int k) const;
  QExpansion truncated(long N) const;
  QExpansion scaled(const PadicApprox& c) const;
  /// f(q^d).
  QExpansion dilated(long d) const;

  friend QExpansion operator+(const QExpansion& f, const QExpansion& g);
  friend QExpansion operator-(const QExpansion& f, const QExpansion& g);
  friend bool operator==(const QExpansion& f, const QExpansion& g) {
    return f.p_ == g.p_ && f.k_ == g.k_ && f.a_ == g.a_;
  }

 private:
  long p_;
  int k_;
  mpz_class modulus_;
  std::vector<mpz_class> a_;
};

/// Same shape with coefficients in Z[zeta_{p^m}]/p^k.
class CycloQExpansion {
 public:
  CycloQExpansion(long p, int m, int k, std::vector<CycloElem> coeffs);
  static CycloQExpansion lift(const QExpansion& f, int m);

  long prime() const { return p_; }
  int level() const { return m_; }
  int precision() const { return k_; }
  long truncation() const { return static_cast<long>(a_.size()) - 1; }
  const std::vector<CycloElem>& coeffs() const { return a_; }
  const CycloElem& coeff(long n) const { return a_.at(static_cast<size_t>(n)); }

  friend bool operator==(const CycloQExpansion& f, const CycloQExpansion& g) { return f.a_ == g.a_; }

 private:
  long p_;
  int m_;
  int k_;
  std::vector<CycloElem> a_;
};

/// tau(0..N) as exact integers (tau(0) = 0), from q * prod (1 - q^n)^24.
std::vector<mpz_class> delta_coefficients(long N);
QExpansion eta_delta(long p, int k, long N);

/// a_n -> a_{ell n}; truncation N / ell.
QExpansion hecke_U(long ell, const QExpansion& f);
/// a_n -> a_{ell n} + chi(ell) ell^(w-1) a_{n/ell}; truncation N / ell.
QExpansion hecke_T(long ell, const QExpansion& f, int weight, const PadicApprox& chi_ell);
/// Scalar chi(ell) ell^(w-1).
QExpansion hecke_S(long ell, const QExpansion& f, int weight, const PadicApprox& chi_ell);
PadicApprox hecke_S_scalar(long ell, long p, int k, int weight, const PadicApprox& chi_ell);

/// a_n -> n a_n.
QExpansion theta(const QExpansion& f);
/// a_n -> kappa(n) a_n.  A units-domain kappa is extended by zero to p | n.
QExpansion twist(const QExpansion& f, const LocConstFn& kappa);
/// a_n -> zeta_{p^m}^(j n) a_n.
CycloQExpansion circle_act(long j, int m, const QExpansion& f);
CycloQExpansion circle_act(long j, const CycloQExpansion& f);

/// (1/p^m) sum_j zeta^(-a j) circle_act(j, f), precision k - m.
CycloQExpansion circle_average(const QExpansion& f, int m, long a);
/// circle_average for every a in [0, p^m), sharing one orbit.
std::vector<CycloQExpansion> circle_averages(const QExpansion& f, int m);
/// The circle_average result read back as a plain expansion (throws if any
/// coefficient leaves the base ring).
QExpansion as_plain(const CycloQExpansion& f);

/// n -> a_n for 1 <= n <= N, with the (p, k) needed to read it along
/// p-adic shells.
class KirTotal {
 public:
  KirTotal(long p, int k, std::vector<mpz_class> values);

  long prime() const { return p_; }
  int precision() const { return k_; }
  long window() const { return static_cast<long>(values_.size()) - 1; }
  PadicApprox at(long n) const;
  /// Value at p^v u; requires p^v u <= window.
  PadicApprox at_shell(int v, long u) const;

 private:
  long p_;
  int k_;
  std::vector<mpz_class> values_;
};

KirTotal kir_total(const QExpansion& f);
/// Multiply along shells: the value at p^v u picks up g(p^v u).
KirTotal fn_mul_action(const LocConstFn& g, const KirTotal& kir);

struct DoubleCosetResult {
  bool ok = false;
  long window = 0;
  std::optional<long> bad_index;
  std::string detail;
};

/// Compares (1/p) sum_i f(zeta_p^i q^(1/p)) with hecke_U(p, f) at precision k - 1.
DoubleCosetResult verify_double_coset(long p, const QExpansion& f);

/// "n,a_n" rows with balanced residues.
std::string qexp_csv(const QExpansion& f);

}  // namespace padicmf
