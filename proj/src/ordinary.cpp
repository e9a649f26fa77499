#include "padicmf/ordinary.hpp"

#include <algorithm>
#include <cmath>

namespace padicmf {

namespace {

mpz_class mod_nonneg(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Polynomials are ascending coefficient vectors.
using Poly = std::vector<mpz_class>;

void trim(Poly& f) {
  while (f.size() > 1 && f.back() == 0) f.pop_back();
}

Poly reduce(Poly f, const mpz_class& m) {
  for (auto& c : f) c = mod_nonneg(c, m);
  trim(f);
  return f;
}

Poly mul(const Poly& a, const Poly& b, const mpz_class& m) {
  Poly out(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return reduce(std::move(out), m);
}

Poly sub(const Poly& a, const Poly& b, const mpz_class& m) {
  Poly out(std::max(a.size(), b.size()), mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return reduce(std::move(out), m);
}

bool is_zero_poly(const Poly& f) {
  return std::all_of(f.begin(), f.end(), [](const mpz_class& c) { return c == 0; });
}

// Quotient and remainder by a divisor with unit leading coefficient mod p^k.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b, long p, int k) {
  const mpz_class m = ipow(p, static_cast<unsigned long>(k));
  a = reduce(std::move(a), m);
  if (b.size() > a.size()) return {Poly{0}, a};
  const mpz_class lead_inv = PadicApprox(p, k, b.back()).inverse().residue();
  Poly q(a.size() - b.size() + 1, mpz_class(0));
  for (size_t i = a.size() - 1;; --i) {
    const mpz_class c = mod_nonneg(a[i] * lead_inv, m);
    q[i - (b.size() - 1)] = c;
    for (size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
    if (i == b.size() - 1) break;
  }
  return {reduce(std::move(q), m), reduce(std::move(a), m)};
}

// s, t with s a + t b = 1 over F_p (a, b coprime mod p).
std::pair<Poly, Poly> ext_gcd_mod_p(const Poly& a, const Poly& b, long p) {
  const mpz_class m = p;
  Poly r0 = reduce(a, m), r1 = reduce(b, m);
  Poly s0{1}, s1{0}, t0{0}, t1{1};
  while (!is_zero_poly(r1)) {
    auto [q, r] = divmod(r0, r1, p, 1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = sub(s0, mul(q, s1, m), m), t2 = sub(t0, mul(q, t1, m), m);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::logic_error("ext_gcd_mod_p: factors are not coprime mod p");
  const mpz_class inv = PadicApprox(p, 1, r0[0]).inverse().residue();
  for (auto& c : s0) c = mod_nonneg(c * inv, m);
  for (auto& c : t0) c = mod_nonneg(c * inv, m);
  return {s0, t0};
}

Poly linear_power(const mpz_class& alpha, int mult, const mpz_class& m) {
  Poly f{1};
  for (int i = 0; i < mult; ++i) f = mul(f, Poly{mod_nonneg(-alpha, m), 1}, m);
  return f;
}

// Lift f = g0 h0 (mod p) to f = g h (mod p^k) with g monic of the same degree.
std::pair<Poly, Poly> hensel_lift(const Poly& f, Poly g, Poly h, long p, int k) {
  const mpz_class pm = p;
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  const Poly g0 = g, h0 = h;
  auto [s, t] = ext_gcd_mod_p(g0, h0, p);
  for (int j = 1; j < k; ++j) {
    const mpz_class pj = ipow(p, static_cast<unsigned long>(j));
    Poly err = sub(f, mul(g, h, modulus), modulus);
    Poly e(err.size());
    for (size_t i = 0; i < err.size(); ++i) {
      if (!mpz_divisible_p(err[i].get_mpz_t(), pj.get_mpz_t()))
        throw std::logic_error("hensel_lift: residual not divisible at step " + std::to_string(j));
      e[i] = mod_nonneg(err[i] / pj, pm);
    }
    auto [q, dg] = divmod(mul(e, t, pm), g0, p, 1);
    Poly dh = reduce(mul(e, s, pm), pm);
    Poly qh = mul(q, h0, pm);
    Poly dhh(std::max(dh.size(), qh.size()), mpz_class(0));
    for (size_t i = 0; i < dh.size(); ++i) dhh[i] += dh[i];
    for (size_t i = 0; i < qh.size(); ++i) dhh[i] += qh[i];
    dhh = reduce(std::move(dhh), pm);
    if (g.size() < dg.size()) g.resize(dg.size(), mpz_class(0));
    for (size_t i = 0; i < dg.size(); ++i) g[i] = mod_nonneg(g[i] + pj * dg[i], modulus);
    if (h.size() < dhh.size()) h.resize(dhh.size(), mpz_class(0));
    for (size_t i = 0; i < dhh.size(); ++i) h[i] = mod_nonneg(h[i] + pj * dhh[i], modulus);
  }
  return {reduce(g, modulus), reduce(h, modulus)};
}

bool kills(const PkMatrix& n, const PkMatrix& vectors) {
  for (size_t i = 0; i < vectors.rows(); ++i) {
    PkMatrix x(vectors.prime(), vectors.precision(), vectors.cols(), 1, vectors.row(i));
    if (!(n * x).is_zero()) return false;
  }
  return true;
}

}  // namespace

HeckeLattice::HeckeLattice(long p, std::vector<QExpansion> basis) : p_(p), basis_(std::move(basis)) {
  if (basis_.empty()) throw std::invalid_argument("HeckeLattice: empty basis");
  k_ = basis_.front().precision();
  N_ = basis_.front().truncation();
  for (const auto& b : basis_) {
    if (b.prime() != p) throw std::invalid_argument("HeckeLattice: basis prime differs from p");
    k_ = std::min(k_, b.precision());
    N_ = std::min(N_, b.truncation());
  }
  for (auto& b : basis_) b = b.reduced(k_).truncated(N_);
  const PkMatrix h = howell_form(coefficient_matrix(N_));
  const auto pivots = howell_pivots(h);
  const bool free = pivots.size() == basis_.size() &&
                    std::all_of(pivots.begin(), pivots.end(), [](const HowellPivot& pv) { return pv.valuation == 0; });
  if (!free)
    throw std::invalid_argument("HeckeLattice: basis has rank deficiency over Z/p^k (Howell form has " +
                                std::to_string(pivots.size()) + " rows for " + std::to_string(basis_.size()) +
                                " vectors or a non-unit pivot)");
}

PkMatrix HeckeLattice::coefficient_matrix(long window) const {
  PkMatrix m(p_, k_, basis_.size(), static_cast<size_t>(window));
  for (size_t i = 0; i < basis_.size(); ++i)
    for (long n = 1; n <= window; ++n) m.set(i, static_cast<size_t>(n - 1), basis_[i].residue(n));
  return m;
}

QExpansion HeckeLattice::combination(const std::vector<mpz_class>& x) const {
  QExpansion out = QExpansion::zero(p_, k_, N_);
  for (size_t i = 0; i < basis_.size(); ++i) out = out + basis_[i].scaled(PadicApprox(p_, k_, x.at(i)));
  return out;
}

PkMatrix up_matrix(const HeckeLattice& lattice) {
  const long p = lattice.prime();
  const long window = lattice.truncation() / p;
  const size_t dim = lattice.dim();
  if (window < 1) throw StabilityError("not U_p-stable at this truncation: window N/p is empty");
  const PkMatrix b = lattice.coefficient_matrix(window);
  const PkMatrix hb = howell_form(b);
  const auto pivots = howell_pivots(hb);
  if (pivots.size() != dim ||
      !std::all_of(pivots.begin(), pivots.end(), [](const HowellPivot& pv) { return pv.valuation == 0; }))
    throw StabilityError("not U_p-stable at this truncation: basis is dependent on the window 1.." +
                         std::to_string(window) + "; increase truncation");
  PkMatrix m(p, lattice.precision(), dim, dim);
  for (size_t i = 0; i < dim; ++i) {
    const QExpansion u = hecke_U(p, lattice.basis()[i]);
    std::vector<mpz_class> v(static_cast<size_t>(window));
    for (long n = 1; n <= window; ++n) v[static_cast<size_t>(n - 1)] = u.residue(n);
    auto x = solve_left(b, v);
    if (!x) {
      const auto residual = howell_reduce(hb, v);
      size_t at = 0;
      while (at < residual.size() && residual[at] == 0) ++at;
      throw StabilityError("not U_p-stable at this truncation/precision: U_p of basis vector " + std::to_string(i) +
                           " leaves the span; residual " + residual[at].get_str() + " at index " +
                           std::to_string(at + 1));
    }
    for (size_t j = 0; j < dim; ++j) m.set(j, i, (*x)[j]);
  }
  return m;
}

ProjectorResult ordinary_projector(const PkMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("ordinary_projector: matrix is not square");
  const double cap_d = static_cast<double>(m.rows()) * m.precision() * std::pow(static_cast<double>(m.prime()), m.rows());
  const long cap = cap_d > 1e9 ? 1000000000L : std::max(2L, static_cast<long>(cap_d));
  PkMatrix e = m;
  int t = 1;
  while (!(e * e == e)) {
    if (++t > cap) throw std::logic_error("ordinary_projector: iteration cap exceeded");
    e = e.pow(static_cast<unsigned long>(t));
  }
  if (!(e * m == m * e)) throw std::logic_error("ordinary_projector: limit does not commute with M");
  return {e, t};
}

KernelReport kernel_check(const HeckeLattice& lattice, const PkMatrix& m, const PkMatrix& e) {
  const long p = lattice.prime();
  KernelReport r{lattice.dim(), e.rank_mod_p(), static_cast<int>(lattice.dim()) * lattice.precision(),
                 right_kernel(e), PkMatrix(p, lattice.precision(), 0, lattice.dim()), false, false, {}, {}};
  if (lattice.truncation() / p < static_cast<long>(r.dim))
    throw StabilityError("kernel_check: window N/p smaller than the dimension; increase truncation");
  r.kernel_pow = right_kernel(m.pow(static_cast<unsigned long>(r.n0)));
  r.modules_equal = r.kernel_e == r.kernel_pow;

  r.window_check = true;
  for (size_t i = 0; i < r.kernel_e.rows() && r.window_check; ++i) {
    const std::vector<mpz_class> x = r.kernel_e.row(i);
    const PkMatrix col(p, lattice.precision(), r.dim, 1, x);
    int steps = 0;
    PkMatrix y = col;
    while (!y.is_zero() && steps < r.n0) {
      y = m * y;
      ++steps;
    }
    if (!y.is_zero()) {
      r.window_check = false;
      r.window_detail = "kernel generator " + std::to_string(i) + " is not killed by M^" + std::to_string(r.n0);
      break;
    }
    QExpansion g = lattice.combination(x);
    for (int s = 0; s < steps && g.truncation() >= 1; ++s) g = hecke_U(p, g);
    if (!g.is_zero()) {
      r.window_check = false;
      r.window_detail = "U_p^" + std::to_string(steps) + " of kernel generator " + std::to_string(i) +
                        " is nonzero on the q-expansion window";
    }
  }
  if (r.window_check) r.window_detail = "every kernel generator vanishes under its U_p power on the window";
  r.verdict = r.modules_equal && r.window_check ? "equal" : "differ";
  return r;
}

std::vector<UnitEigenTail> coinvariant_tails(const PkMatrix& m, const PkMatrix& e) {
  const long p = m.prime();
  const int k = std::min(m.precision(), e.precision());
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  const PkMatrix a = (e * m).reduced(k);
  const size_t n = a.rows();
  const Poly cp = charpoly(a);
  const Poly cp1 = reduce(cp, mpz_class(p));
  std::vector<UnitEigenTail> out;
  for (long r0 = 1; r0 < p; ++r0) {
    Poly rest = cp1;
    int mult = 0;
    while (rest.size() > 1) {
      auto [q, rem] = divmod(rest, Poly{mpz_class(p - r0), 1}, p, 1);
      if (!is_zero_poly(rem)) break;
      rest = std::move(q);
      ++mult;
    }
    if (mult == 0) continue;
    auto [g, h] = hensel_lift(cp, linear_power(r0, mult, p), rest, p, k);
    std::optional<mpz_class> alpha;
    if (mult % p != 0) {
      const mpz_class inv = PadicApprox(p, k, mult).inverse().residue();
      const mpz_class cand = mod_nonneg(-g[static_cast<size_t>(mult - 1)] * inv, modulus);
      if (linear_power(cand, mult, modulus) == g) alpha = cand;
    } else {
      const mpz_class span = ipow(p, static_cast<unsigned long>(k - 1));
      if (span > 1000000) throw PrecisionError("coinvariant_tails: raise precision (multiplicity divisible by p)");
      for (mpz_class t = 0; t < span && !alpha; ++t) {
        const mpz_class cand = r0 + p * t;
        if (linear_power(cand, mult, modulus) == g) alpha = cand;
      }
    }
    if (!alpha)
      throw PrecisionError("coinvariant_tails: raise precision; the unit eigenvalues congruent to " +
                           std::to_string(r0) + " mod p do not separate in Z/p^" + std::to_string(k));
    const PkMatrix shifted = a - PkMatrix::identity(p, k, n).scaled(*alpha);
    const PkMatrix gen = right_kernel(shifted.pow(static_cast<unsigned long>(mult)));
    int jordan = mult;
    for (int j = 1; j <= mult; ++j) {
      if (kills(shifted.pow(static_cast<unsigned long>(j)), gen)) {
        jordan = j;
        break;
      }
    }
    UnitEigenTail entry{PadicApprox(p, k, *alpha), mult, jordan, {}};
    const SmoothChar chi = SmoothChar::unramified(p, k, entry.alpha);
    for (int deg = 0; deg < jordan; ++deg) entry.tails.push_back(CharTail{chi, deg, 0, PadicApprox::one(p, k)});
    out.push_back(std::move(entry));
  }
  return out;
}

Stabilization stabilize(const NewformData& f, long p, int k, RootChoice choice) {
  if (f.level % p == 0) throw std::invalid_argument("stabilize: p divides the level");
  if (f.truncation() < p) throw std::invalid_argument("stabilize: truncation below p");
  const PadicApprox a(p, k, f.coeffs[static_cast<size_t>(p)]);
  const PadicApprox c(p, k, f.nebentypus(p) * ipow(p, static_cast<unsigned long>(f.weight - 1)));
  std::vector<std::string> flags;
  const bool ordinary = a.is_unit();
  PadicApprox root = a, other = a;
  if (ordinary) {
    const PadicApprox alpha = hensel_unit_root(a, c);
    const PadicApprox beta = a - alpha;
    if (choice == RootChoice::NonUnit) {
      root = beta;
      other = alpha;
    } else {
      root = alpha;
      other = beta;
    }
  } else {
    if (choice == RootChoice::Unit) throw std::invalid_argument("stabilize: non-ordinary form has no unit root");
    flags.push_back("non-ordinary: both roots are non-units");
    if (auto roots = split_quadratic(a, c)) {
      root = roots->small;
      other = roots->large;
    } else {
      const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
      if (modulus > 2000000) throw PrecisionError("stabilize: root search space too large; lower k");
      std::optional<mpz_class> found;
      for (mpz_class x = 0; x < modulus && !found; ++x)
        if ((PadicApprox(p, k, x) * PadicApprox(p, k, x) - a * PadicApprox(p, k, x) + c).is_zero()) found = x;
      if (!found) throw std::domain_error("stabilize: characteristic polynomial has no root mod p^k");
      root = PadicApprox(p, k, *found);
      other = a - root;
      flags.push_back("roots found by search mod p^k");
    }
  }
  const int kk = std::min({k, root.precision(), other.precision()});
  root = root.reduced(kk);
  other = other.reduced(kk);
  const QExpansion base = f.expansion(p, kk);
  const QExpansion form = base - base.dilated(p).scaled(other);
  const QExpansion lhs = hecke_U(p, form);
  const QExpansion rhs = form.truncated(lhs.truncation()).scaled(root);
  if (!(lhs == rhs)) throw std::logic_error("stabilize: U_p eigen check failed on the window");
  if (!(root * other).congruent(c)) throw std::logic_error("stabilize: root product differs from chi(p) p^(w-1)");
  return {form, root, other, ordinary, flags};
}

nlohmann::ordered_json ordinary_report(const HeckeLattice& lattice) {
  const PkMatrix m = up_matrix(lattice);
  const ProjectorResult proj = ordinary_projector(m);
  const KernelReport kr = kernel_check(lattice, m, proj.e);
  const auto tails = coinvariant_tails(m, proj.e);
  nlohmann::ordered_json out;
  out["dim"] = lattice.dim();
  out["rank_e"] = kr.rank_e;
  nlohmann::ordered_json eig = nlohmann::ordered_json::array();
  nlohmann::ordered_json tl = nlohmann::ordered_json::array();
  for (const auto& t : tails) {
    eig.push_back(t.alpha.str());
    for (const auto& ct : t.tails)
      tl.push_back({{"conductor", ct.chi.conductor()}, {"value_at_p", ct.chi.at_p().str()}, {"a", ct.a}, {"b", ct.b}});
  }
  out["unit_eigenvalues"] = eig;
  out["kernel_dim"] = lattice.dim() - kr.rank_e;
  out["kernel_verdict"] = kr.verdict;
  out["tails"] = tl;
  out["up_matrix"] = m.str();
  out["projector_steps"] = proj.steps;
  out["n0"] = kr.n0;
  out["kernel_generators"] = kr.kernel_e.str();
  out["window_check"] = kr.window_detail;
  return out;
}

}  // namespace padicmf
