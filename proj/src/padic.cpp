#include "padicmf/padic.hpp"

#include <algorithm>
#include <string>

namespace padicmf {

mpz_class ipow(long p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

int exact_valuation(const mpz_class& n, long p) {
  if (n == 0) throw std::invalid_argument("exact_valuation: zero has infinite valuation");
  mpz_class q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PadicApprox::PadicApprox(long p, int k, const mpz_class& value) : p_(p), k_(k) {
  if (p < 2) throw std::invalid_argument("PadicApprox: prime must be >= 2");
  if (k < 1) throw std::invalid_argument("PadicApprox: precision must be positive");
  modulus_ = ipow(p, static_cast<unsigned long>(k));
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
}

int PadicApprox::valuation() const {
  if (residue_ == 0) return k_;
  return std::min(k_, exact_valuation(residue_, p_));
}

mpz_class PadicApprox::balanced() const {
  mpz_class half = modulus_ / 2;
  if (residue_ > half) return residue_ - modulus_;
  return residue_;
}

void PadicApprox::lower_to(int k) {
  if (k >= k_) return;
  k_ = k;
  modulus_ = ipow(p_, static_cast<unsigned long>(k));
  mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
}

PadicApprox PadicApprox::reduced(int k) const {
  if (k < 1 || k > k_) throw std::invalid_argument("PadicApprox::reduced: precision out of range");
  PadicApprox r = *this;
  r.lower_to(k);
  return r;
}

void PadicApprox::check_compatible(const PadicApprox& o) const {
  if (p_ != o.p_) throw std::invalid_argument("PadicApprox: mixed primes");
}

PadicApprox& PadicApprox::operator+=(const PadicApprox& o) {
  check_compatible(o);
  lower_to(o.k_);
  residue_ += o.residue_;
  mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  return *this;
}

PadicApprox& PadicApprox::operator-=(const PadicApprox& o) {
  check_compatible(o);
  lower_to(o.k_);
  residue_ -= o.residue_;
  mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  return *this;
}

PadicApprox& PadicApprox::operator*=(const PadicApprox& o) {
  check_compatible(o);
  lower_to(o.k_);
  residue_ *= o.residue_;
  mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  return *this;
}

PadicApprox PadicApprox::operator-() const { return {p_, k_, -residue_}; }

bool PadicApprox::congruent(const PadicApprox& o) const {
  check_compatible(o);
  int k = std::min(k_, o.k_);
  return reduced(k).residue_ == o.reduced(k).residue_;
}

PadicApprox PadicApprox::inverse() const {
  if (!is_unit()) throw std::domain_error("PadicApprox::inverse: non-unit " + str() + " mod " + std::to_string(p_) + "^" + std::to_string(k_));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
  return {p_, k_, inv};
}

PadicApprox PadicApprox::pow(unsigned long e) const {
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, modulus_.get_mpz_t());
  return {p_, k_, r};
}

PadicApprox PadicApprox::pow(const mpz_class& e) const {
  if (e < 0) throw std::invalid_argument("PadicApprox::pow: negative exponent");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), residue_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
  return {p_, k_, r};
}

PadicApprox PadicApprox::ipow_signed(long e) const {
  if (e >= 0) return pow(static_cast<unsigned long>(e));
  return inverse().pow(static_cast<unsigned long>(-e));
}

PadicApprox PadicApprox::divide_by_p_power(int e) const {
  if (e == 0) return *this;
  if (e < 0) throw std::invalid_argument("divide_by_p_power: negative exponent");
  if (e >= k_) throw PrecisionError("divide_by_p_power: dividing by p^" + std::to_string(e) + " leaves no precision at k=" + std::to_string(k_));
  if (valuation() < e) throw std::domain_error("divide_by_p_power: " + str() + " not divisible by p^" + std::to_string(e));
  mpz_class q = residue_ / ipow(p_, static_cast<unsigned long>(e));
  return {p_, k_ - e, q};
}

PadicApprox hensel_unit_root(const PadicApprox& a, const PadicApprox& c) {
  if (a.prime() != c.prime()) throw std::invalid_argument("hensel_unit_root: mixed primes");
  if (a.valuation() > 0) throw std::domain_error("hensel_unit_root: non-ordinary input (a is not a unit)");
  if (c.valuation() == 0) throw std::domain_error("hensel_unit_root: both roots are units (c is a unit)");
  int k = std::min(a.precision(), c.precision());
  PadicApprox aa = a.reduced(k), cc = c.reduced(k);
  // alpha <- a - c/alpha gains one p-adic digit per step.
  PadicApprox alpha = aa;
  for (int it = 0; it <= k + 1; ++it) {
    PadicApprox next = aa - cc * alpha.inverse();
    if (next == alpha) break;
    alpha = next;
  }
  if (!(alpha * alpha - aa * alpha + cc).is_zero())
    throw std::logic_error("hensel_unit_root: iteration did not converge");
  return alpha;
}

UnitDecomp teichmuller(const PadicApprox& u) {
  if (!u.is_unit()) throw std::domain_error("teichmuller: non-unit input");
  const long p = u.prime();
  const int k = u.precision();
  if (p == 2) {
    // mu(Q_2) = {+-1}; principal part lies in 1 + 4Z_2.
    long sign = mpz_tstbit(u.residue().get_mpz_t(), 1) ? -1 : 1;
    PadicApprox t(p, k, sign);
    return {t, u * t};
  }
  PadicApprox t = u;
  for (int it = 0; it <= k + 1; ++it) {
    PadicApprox next = t.pow(static_cast<unsigned long>(p));
    if (next == t) return {t, u * t.inverse()};
    t = next;
  }
  throw std::logic_error("teichmuller: p-power iteration did not stabilize");
}

long plog_term_count(long p, int k, int v) {
  // Largest n whose term x^n/n can still be nonzero mod p^k: n*v - v_p(n) < k.
  if (v >= k) return 0;
  long last = 0;
  for (long n = 1;; ++n) {
    int vn = 0;
    for (long m = n; m % p == 0; m /= p) ++vn;
    int floor_log = 0;
    for (long m = n; m >= p; m /= p) ++floor_log;
    if (n * v - floor_log >= k) break;  // n*v - log_p(n) is nondecreasing
    if (n * v - vn < k) last = n;
  }
  return last;
}

int plog_slack(long p, int k) {
  long len = plog_term_count(p, k, p == 2 ? 2 : 1);
  int s = 0;
  for (long m = len; m >= p; m /= p) ++s;
  return s;
}

PadicApprox plog(const PadicApprox& u) {
  const long p = u.prime();
  const int k = u.precision();
  PadicApprox x = u - PadicApprox::one(p, k);
  int need = (p == 2) ? 2 : 1;
  if (x.valuation() < need)
    throw std::domain_error("plog: input is not a principal unit");
  if (x.is_zero()) return PadicApprox::zero(p, k);
  long terms = plog_term_count(p, k, x.valuation());
  mpz_class modulus = u.modulus();
  const mpz_class wide = modulus * ipow(p, 64);
  mpz_class sum = 0;
  mpz_class xpow = 1;
  for (long n = 1; n <= terms; ++n) {
    xpow *= x.residue();
    long unit_part = n;
    int vn = 0;
    while (unit_part % p == 0) {
      unit_part /= p;
      ++vn;
    }
    // x^n is divisible by p^{v_p(n)} because n*v(x) >= v_p(n).
    mpz_class term = xpow / ipow(p, static_cast<unsigned long>(vn));
    mpz_class inv;
    mpz_class up = unit_part;
    mpz_invert(inv.get_mpz_t(), up.get_mpz_t(), modulus.get_mpz_t());
    term = term * inv;
    if (n % 2 == 0) sum -= term;
    else sum += term;
    mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), modulus.get_mpz_t());
    mpz_fdiv_r(xpow.get_mpz_t(), xpow.get_mpz_t(), wide.get_mpz_t());
  }
  return {p, k, sum};
}

std::pair<int, int> newton_slopes(const PadicApprox& a, const PadicApprox& c) {
  int va = a.valuation(), vc = c.valuation();
  if (2 * va < vc) return {va, vc - va};
  return {vc / 2, vc - vc / 2};
}

std::optional<QuadraticRoots> split_quadratic(const PadicApprox& a, const PadicApprox& c) {
  int va = a.valuation(), vc = c.valuation();
  if (2 * va >= vc) return std::nullopt;
  const int k = std::min(a.precision(), c.precision());
  if (k - 2 * va < 1)
    throw PrecisionError("split_quadratic: precision " + std::to_string(k) + " too small to separate slopes " + std::to_string(va));
  PadicApprox a1 = a.reduced(k).divide_by_p_power(va);
  PadicApprox c1 = c.reduced(k).divide_by_p_power(2 * va);
  PadicApprox y = hensel_unit_root(a1, c1);  // precision k - 2va
  const long p = a.prime();
  const int kr = k - va;
  PadicApprox small(p, kr, y.residue() * ipow(p, static_cast<unsigned long>(va)));
  PadicApprox large = a.reduced(kr) - small;
  return QuadraticRoots{small, large, va, vc - va};
}

}  // namespace padicmf
