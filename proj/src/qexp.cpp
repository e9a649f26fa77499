#include "padicmf/qexp.hpp"

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

void require_prime(long ell, const char* op) {
  if (!is_prime(ell)) throw std::invalid_argument(std::string(op) + ": ell = " + std::to_string(ell) + " is not prime");
}

}  // namespace

QExpansion::QExpansion(long p, int k, std::vector<mpz_class> coeffs) : p_(p), k_(k), a_(std::move(coeffs)) {
  if (p < 2 || k < 1) throw std::invalid_argument("QExpansion: bad (p, k)");
  if (a_.empty()) a_.push_back(0);
  modulus_ = ipow(p, static_cast<unsigned long>(k));
  for (auto& c : a_) c = mod_nonneg(c, modulus_);
  if (a_[0] != 0) throw std::invalid_argument("QExpansion: constant term must vanish");
}

QExpansion QExpansion::zero(long p, int k, long N) {
  return QExpansion(p, k, std::vector<mpz_class>(static_cast<size_t>(N + 1), mpz_class(0)));
}

bool QExpansion::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& c) { return c == 0; });
}

QExpansion QExpansion::reduced(int k) const {
  if (k > k_) throw PrecisionError("QExpansion::reduced: cannot raise precision");
  return QExpansion(p_, k, a_);
}

QExpansion QExpansion::truncated(long N) const {
  if (N > truncation()) throw std::invalid_argument("QExpansion::truncated: beyond the stored window");
  return QExpansion(p_, k_, std::vector<mpz_class>(a_.begin(), a_.begin() + N + 1));
}

QExpansion QExpansion::scaled(const PadicApprox& c) const {
  const int k = std::min(k_, c.precision());
  std::vector<mpz_class> out(a_.size());
  for (size_t n = 0; n < a_.size(); ++n) out[n] = a_[n] * c.residue();
  return QExpansion(p_, k, std::move(out));
}

QExpansion QExpansion::dilated(long d) const {
  if (d < 1) throw std::invalid_argument("QExpansion::dilated: d must be positive");
  std::vector<mpz_class> out(a_.size(), mpz_class(0));
  for (size_t n = 1; n * static_cast<size_t>(d) < a_.size(); ++n) out[n * static_cast<size_t>(d)] = a_[n];
  return QExpansion(p_, k_, std::move(out));
}

namespace {

QExpansion combine(const QExpansion& f, const QExpansion& g, int sign) {
  if (f.prime() != g.prime()) throw std::invalid_argument("QExpansion: mixed primes");
  const long N = std::min(f.truncation(), g.truncation());
  std::vector<mpz_class> out(static_cast<size_t>(N + 1));
  for (long n = 0; n <= N; ++n) out[static_cast<size_t>(n)] = f.residue(n) + sign * g.residue(n);
  return QExpansion(f.prime(), std::min(f.precision(), g.precision()), std::move(out));
}

}  // namespace

QExpansion operator+(const QExpansion& f, const QExpansion& g) { return combine(f, g, 1); }
QExpansion operator-(const QExpansion& f, const QExpansion& g) { return combine(f, g, -1); }

CycloQExpansion::CycloQExpansion(long p, int m, int k, std::vector<CycloElem> coeffs)
    : p_(p), m_(m), k_(k), a_(std::move(coeffs)) {
  for (const auto& c : a_)
    if (c.prime() != p || c.level() != m || c.precision() != k)
      throw std::invalid_argument("CycloQExpansion: coefficient ring mismatch");
  if (a_.empty() || !a_[0].is_zero()) throw std::invalid_argument("CycloQExpansion: constant term must vanish");
}

CycloQExpansion CycloQExpansion::lift(const QExpansion& f, int m) {
  std::vector<CycloElem> out;
  out.reserve(f.residues().size());
  for (long n = 0; n <= f.truncation(); ++n) out.push_back(CycloElem::scalar(m, f.coeff(n)));
  return CycloQExpansion(f.prime(), m, f.precision(), std::move(out));
}

std::vector<mpz_class> delta_coefficients(long N) {
  if (N < 1) throw std::invalid_argument("delta_coefficients: N must be >= 1");
  // Euler's pentagonal series for prod (1 - q^n), to q^(N-1).
  const size_t len = static_cast<size_t>(N);
  std::vector<mpz_class> euler(len, mpz_class(0));
  for (long j = 0;; ++j) {
    bool any = false;
    for (long s : {j, -j}) {
      const long e = s * (3 * s - 1) / 2;
      if (e < static_cast<long>(len)) {
        euler[static_cast<size_t>(e)] = (j % 2 == 0) ? 1 : -1;
        any = true;
      }
      if (j == 0) break;
    }
    if (!any) break;
  }
  auto sq = [&](const std::vector<mpz_class>& s) { return kernels::parallel::series_mul(s, s, len); };
  std::vector<mpz_class> p8 = sq(sq(sq(euler)));
  std::vector<mpz_class> p24 = kernels::parallel::series_mul(sq(p8), p8, len);
  std::vector<mpz_class> tau(len + 1, mpz_class(0));
  std::copy(p24.begin(), p24.end(), tau.begin() + 1);
  return tau;
}

QExpansion eta_delta(long p, int k, long N) { return QExpansion(p, k, delta_coefficients(N)); }

QExpansion hecke_U(long ell, const QExpansion& f) {
  require_prime(ell, "hecke_U");
  const long M = f.truncation() / ell;
  std::vector<mpz_class> out(static_cast<size_t>(M + 1));
  for (long n = 0; n <= M; ++n) out[static_cast<size_t>(n)] = f.residue(ell * n);
  return QExpansion(f.prime(), f.precision(), std::move(out));
}

PadicApprox hecke_S_scalar(long ell, long p, int k, int weight, const PadicApprox& chi_ell) {
  if (weight < 1) throw std::invalid_argument("hecke_S: weight must be >= 1");
  return chi_ell * PadicApprox(p, k, ipow(ell, static_cast<unsigned long>(weight - 1)));
}

QExpansion hecke_T(long ell, const QExpansion& f, int weight, const PadicApprox& chi_ell) {
  require_prime(ell, "hecke_T");
  const PadicApprox s = hecke_S_scalar(ell, f.prime(), f.precision(), weight, chi_ell);
  const long M = f.truncation() / ell;
  std::vector<mpz_class> out(static_cast<size_t>(M + 1));
  for (long n = 1; n <= M; ++n) {
    mpz_class c = f.residue(ell * n);
    if (n % ell == 0) c += s.residue() * f.residue(n / ell);
    out[static_cast<size_t>(n)] = c;
  }
  return QExpansion(f.prime(), std::min(f.precision(), s.precision()), std::move(out));
}

QExpansion hecke_S(long ell, const QExpansion& f, int weight, const PadicApprox& chi_ell) {
  require_prime(ell, "hecke_S");
  return f.scaled(hecke_S_scalar(ell, f.prime(), f.precision(), weight, chi_ell));
}

QExpansion theta(const QExpansion& f) {
  std::vector<mpz_class> out(f.residues().size());
  for (long n = 0; n <= f.truncation(); ++n) out[static_cast<size_t>(n)] = f.residue(n) * n;
  return QExpansion(f.prime(), f.precision(), std::move(out));
}

QExpansion twist(const QExpansion& f, const LocConstFn& kappa) {
  if (kappa.prime() != f.prime()) throw std::invalid_argument("twist: mixed primes");
  const bool units_only = kappa.domain() == Domain::ZpUnits;
  std::vector<mpz_class> out(f.residues().size(), mpz_class(0));
  for (long n = 1; n <= f.truncation(); ++n) {
    if (units_only && n % f.prime() == 0) continue;
    out[static_cast<size_t>(n)] = kappa.at_residue(mpz_class(n)) * f.residue(n);
  }
  return QExpansion(f.prime(), std::min(f.precision(), kappa.precision()), std::move(out));
}

CycloQExpansion circle_act(long j, const CycloQExpansion& f) {
  const long order = ipow(f.prime(), static_cast<unsigned long>(f.level())).get_si();
  const long jr = ((j % order) + order) % order;
  std::vector<CycloElem> out;
  out.reserve(f.coeffs().size());
  for (long n = 0; n <= f.truncation(); ++n) out.push_back(f.coeff(n).mul_zeta_power((jr * (n % order)) % order));
  return CycloQExpansion(f.prime(), f.level(), f.precision(), std::move(out));
}

CycloQExpansion circle_act(long j, int m, const QExpansion& f) { return circle_act(j, CycloQExpansion::lift(f, m)); }

namespace {

std::vector<std::vector<CycloElem>> circle_orbit(const QExpansion& f, int m) {
  const long order = ipow(f.prime(), static_cast<unsigned long>(m)).get_si();
  const CycloQExpansion base = CycloQExpansion::lift(f, m);
  std::vector<std::vector<CycloElem>> orbit;
  orbit.reserve(static_cast<size_t>(order));
  for (long j = 0; j < order; ++j) orbit.push_back(circle_act(j, base).coeffs());
  return orbit;
}

}  // namespace

CycloQExpansion circle_average(const QExpansion& f, int m, long a) {
  std::vector<CycloElem> avg = kernels::parallel::orbit_average(circle_orbit(f, m), a);
  return CycloQExpansion(f.prime(), m, f.precision() - m, std::move(avg));
}

std::vector<CycloQExpansion> circle_averages(const QExpansion& f, int m) {
  const auto orbit = circle_orbit(f, m);
  std::vector<CycloQExpansion> out;
  out.reserve(orbit.size());
  for (long a = 0; a < static_cast<long>(orbit.size()); ++a)
    out.emplace_back(f.prime(), m, f.precision() - m, kernels::parallel::orbit_average(orbit, a));
  return out;
}

QExpansion as_plain(const CycloQExpansion& f) {
  std::vector<mpz_class> out;
  out.reserve(f.coeffs().size());
  for (long n = 0; n <= f.truncation(); ++n) {
    auto s = f.coeff(n).as_scalar();
    if (!s) throw std::domain_error("as_plain: coefficient " + std::to_string(n) + " is not a scalar");
    out.push_back(s->residue());
  }
  return QExpansion(f.prime(), f.precision(), std::move(out));
}

KirTotal::KirTotal(long p, int k, std::vector<mpz_class> values) : p_(p), k_(k), values_(std::move(values)) {
  if (values_.empty()) values_.push_back(0);
}

PadicApprox KirTotal::at(long n) const {
  if (n < 1 || n > window()) throw std::out_of_range("KirTotal: n = " + std::to_string(n) + " outside [1, window]");
  return {p_, k_, values_[static_cast<size_t>(n)]};
}

PadicApprox KirTotal::at_shell(int v, long u) const {
  if (v < 0 || u % p_ == 0) throw std::invalid_argument("KirTotal::at_shell: need v >= 0 and a unit u");
  return at(ipow(p_, static_cast<unsigned long>(v)).get_si() * u);
}

KirTotal kir_total(const QExpansion& f) { return KirTotal(f.prime(), f.precision(), f.residues()); }

KirTotal fn_mul_action(const LocConstFn& g, const KirTotal& kir) {
  if (g.domain() != Domain::Zp) throw std::invalid_argument("fn_mul_action: multiplier must be a function on Z_p");
  const long p = kir.prime();
  std::vector<mpz_class> out(static_cast<size_t>(kir.window() + 1), mpz_class(0));
  for (long n = 1; n <= kir.window(); ++n) {
    int v = 0;
    long u = n;
    while (u % p == 0) {
      u /= p;
      ++v;
    }
    const mpz_class x = ipow(p, static_cast<unsigned long>(v)) * u;
    out[static_cast<size_t>(n)] = g.at_residue(x) * kir.at_shell(v, u).residue();
  }
  return KirTotal(p, std::min(kir.precision(), g.precision()), std::move(out));
}

DoubleCosetResult verify_double_coset(long p, const QExpansion& f) {
  if (p != f.prime()) throw std::invalid_argument("verify_double_coset: prime mismatch");
  if (f.precision() < 2) throw PrecisionError("verify_double_coset: needs k >= 2");
  DoubleCosetResult res;
  const QExpansion up = hecke_U(p, f).reduced(f.precision() - 1);
  res.window = up.truncation();
  // Index n of f becomes exponent n/p after q -> zeta^i q^(1/p).
  const long N = res.window * p;
  const CycloQExpansion base = CycloQExpansion::lift(f.truncated(N), 1);
  std::vector<std::vector<CycloElem>> orbit;
  for (long i = 0; i < p; ++i) orbit.push_back(circle_act(i, base).coeffs());
  std::vector<CycloElem> avg;
  try {
    avg = kernels::parallel::orbit_average(orbit, 0);
  } catch (const std::domain_error& e) {
    res.detail = e.what();
    return res;
  }
  for (long n = 1; n <= N; ++n) {
    const CycloElem& c = avg[static_cast<size_t>(n)];
    if (n % p != 0) {
      if (!c.is_zero()) {
        res.bad_index = n;
        res.detail = "non-integral exponent " + std::to_string(n) + "/" + std::to_string(p) + " survives";
        return res;
      }
      continue;
    }
    auto s = c.as_scalar();
    if (!s || s->residue() != up.residue(n / p)) {
      res.bad_index = n / p;
      res.detail = "coefficient mismatch at index " + std::to_string(n / p);
      return res;
    }
  }
  res.ok = true;
  return res;
}

std::string qexp_csv(const QExpansion& f) {
  std::ostringstream os;
  os << "n,a_n\n";
  for (long n = 1; n <= f.truncation(); ++n) os << n << ',' << f.coeff(n).balanced().get_str() << "\n";
  return os.str();
}

}  // namespace padicmf
