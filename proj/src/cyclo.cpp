#include "padicmf/cyclo.hpp"

#include <string>

namespace padicmf {

long cyclo_degree(long p, int m) {
  if (m == 0) return 1;
  return ipow(p, static_cast<unsigned long>(m - 1)).get_si() * (p - 1);
}

CycloElem::CycloElem(long p, int m, int k) : p_(p), m_(m), k_(k) {
  if (p < 2 || m < 0 || k < 1) throw std::invalid_argument("CycloElem: bad (p, m, k)");
  order_ = ipow(p, static_cast<unsigned long>(m)).get_si();
  modulus_ = ipow(p, static_cast<unsigned long>(k));
  coeffs_.assign(static_cast<size_t>(cyclo_degree(p, m)), mpz_class(0));
}

CycloElem::CycloElem(long p, int m, int k, std::vector<mpz_class> coeffs) : CycloElem(p, m, k) {
  if (coeffs.size() > coeffs_.size()) {
    coeffs_ = fold(p, m, std::move(coeffs), modulus_);
  } else {
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
    normalize();
  }
}

void CycloElem::normalize() {
  for (auto& c : coeffs_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
}

std::vector<mpz_class> CycloElem::fold(long p, int m, std::vector<mpz_class> v, const mpz_class& modulus) {
  const long phi = cyclo_degree(p, m);
  if (m == 0) {
    // zeta = 1: every exponent collapses onto the constant term.
    mpz_class s = 0;
    for (auto& c : v) s += c;
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), modulus.get_mpz_t());
    return {s};
  }
  const long step = phi / (p - 1);  // p^(m-1)
  // x^phi = -(1 + x^step + ... + x^((p-2) step)); eliminate from the top down.
  for (long i = static_cast<long>(v.size()) - 1; i >= phi; --i) {
    if (v[static_cast<size_t>(i)] == 0) continue;
    mpz_class c = v[static_cast<size_t>(i)];
    v[static_cast<size_t>(i)] = 0;
    for (long t = 0; t <= p - 2; ++t) v[static_cast<size_t>(i - phi + t * step)] -= c;
  }
  v.resize(static_cast<size_t>(phi));
  for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  return v;
}

CycloElem CycloElem::scalar(int m, const PadicApprox& c) {
  CycloElem r(c.prime(), m, c.precision());
  r.coeffs_[0] = c.residue();
  return r;
}

CycloElem CycloElem::zeta_power(long p, int m, int k, long e) {
  CycloElem r(p, m, k);
  r.coeffs_[0] = 1;
  return r.mul_zeta_power(e);
}

bool CycloElem::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<PadicApprox> CycloElem::as_scalar() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return PadicApprox(p_, k_, coeffs_[0]);
}

CycloElem CycloElem::reduced(int k) const {
  if (k < 1 || k > k_) throw std::invalid_argument("CycloElem::reduced: precision out of range");
  CycloElem r(p_, m_, k, coeffs_);
  return r;
}

CycloElem CycloElem::divide_by_p_power(int e) const {
  if (e == 0) return *this;
  if (e >= k_) throw PrecisionError("CycloElem::divide_by_p_power: no precision left");
  const mpz_class d = ipow(p_, static_cast<unsigned long>(e));
  std::vector<mpz_class> q(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), d.get_mpz_t()))
      throw std::domain_error("CycloElem::divide_by_p_power: coefficient " + std::to_string(i) + " not divisible");
    mpz_divexact(q[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
  }
  return CycloElem(p_, m_, k_ - e, std::move(q));
}

CycloElem CycloElem::mul_zeta_power(long e) const {
  long shift = ((e % order_) + order_) % order_;
  if (shift == 0) return *this;
  std::vector<mpz_class> rot(static_cast<size_t>(order_), mpz_class(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    rot[static_cast<size_t>((static_cast<long>(i) + shift) % order_)] = coeffs_[i];
  }
  CycloElem r(p_, m_, k_);
  r.coeffs_ = fold(p_, m_, std::move(rot), modulus_);
  return r;
}

CycloElem CycloElem::scaled(const PadicApprox& c) const {
  if (c.prime() != p_) throw std::invalid_argument("CycloElem::scaled: mixed primes");
  int k = std::min(k_, c.precision());
  CycloElem r(p_, m_, k, coeffs_);
  for (auto& x : r.coeffs_) x *= c.residue();
  r.normalize();
  return r;
}

void CycloElem::check_same_ring(const CycloElem& o) const {
  if (p_ != o.p_ || m_ != o.m_) throw std::invalid_argument("CycloElem: mixed rings");
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  check_same_ring(o);
  if (o.k_ < k_) *this = reduced(o.k_);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  check_same_ring(o);
  if (o.k_ < k_) *this = reduced(o.k_);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
  a.check_same_ring(b);
  int k = std::min(a.k_, b.k_);
  std::vector<mpz_class> prod(2 * a.coeffs_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return CycloElem(a.p_, a.m_, k, std::move(prod));
}

CycloElem cyclo_average(std::span<const CycloElem> values, long a) {
  std::vector<const CycloElem*> ptrs;
  ptrs.reserve(values.size());
  for (const auto& v : values) ptrs.push_back(&v);
  return cyclo_average(std::span<const CycloElem* const>(ptrs), a);
}

CycloElem cyclo_average(std::span<const CycloElem* const> values, long a) {
  if (values.empty()) throw std::invalid_argument("cyclo_average: no values");
  const CycloElem& first = *values.front();
  const long p = first.prime();
  const int m = first.level();
  const int k = first.precision();
  const long order = first.order();
  if (static_cast<long>(values.size()) != order)
    throw std::invalid_argument("cyclo_average: expected p^m values, got " + std::to_string(values.size()));
  if (k <= m) throw PrecisionError("cyclo_average: precision must exceed the level");

  // Accumulate in Z[x]/(x^(p^m) - 1), where multiplying by zeta^(-a j) is a rotation.
  std::vector<mpz_class> acc(static_cast<size_t>(order), mpz_class(0));
  for (long j = 0; j < order; ++j) {
    const CycloElem& v = *values[static_cast<size_t>(j)];
    if (v.prime() != p || v.level() != m || v.precision() != k)
      throw std::invalid_argument("cyclo_average: values do not share (p, m, k)");
    long shift = (((-a * j) % order) + order) % order;
    auto cs = v.coeffs();
    for (size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] == 0) continue;
      acc[static_cast<size_t>((static_cast<long>(i) + shift) % order)] += cs[i];
    }
  }
  auto folded = CycloElem::fold(p, m, std::move(acc), first.modulus());
  const mpz_class d = ipow(p, static_cast<unsigned long>(m));
  for (size_t i = 0; i < folded.size(); ++i) {
    if (!mpz_divisible_p(folded[i].get_mpz_t(), d.get_mpz_t()))
      throw std::domain_error("cyclo_average: sum not divisible by p^m at basis index " + std::to_string(i));
    mpz_divexact(folded[i].get_mpz_t(), folded[i].get_mpz_t(), d.get_mpz_t());
  }
  return CycloElem(p, m, k - m, std::move(folded));
}

}  // namespace padicmf
