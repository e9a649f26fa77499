#include "padicmf/profinite.hpp"

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

bool is_unit_residue(const mpz_class& u, long p) {
  return !mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p));
}

}  // namespace

LocConstFn::LocConstFn(long p, int k, int level, Domain domain, std::vector<mpz_class> table, mpz_class outside)
    : p_(p), k_(k), level_(level), domain_(domain), table_(std::move(table)) {
  if (p < 2 || k < 1 || level < 0) throw std::invalid_argument("LocConstFn: bad (p, k, level)");
  modulus_ = ipow(p, static_cast<unsigned long>(k));
  level_modulus_ = ipow(p, static_cast<unsigned long>(level));
  if (table_.size() != level_modulus_.get_ui())
    throw std::invalid_argument("LocConstFn: table length " + std::to_string(table_.size()) + " does not match p^level");
  for (size_t r = 0; r < table_.size(); ++r) {
    table_[r] = mod_nonneg(table_[r], modulus_);
    if (domain == Domain::ZpUnits && level > 0 && r % static_cast<size_t>(p) == 0 && table_[r] != 0)
      throw std::invalid_argument("LocConstFn: units-domain table has a value at a non-unit residue");
  }
  outside_ = domain == Domain::Zp ? mod_nonneg(outside, modulus_) : mpz_class(0);
}

LocConstFn LocConstFn::constant(long p, int k, const mpz_class& c) {
  return LocConstFn(p, k, 0, Domain::Zp, {c}, c);
}

LocConstFn LocConstFn::coordinate(long p, int k) {
  return from_function(p, k, k, Domain::Zp, [](const mpz_class& x) { return x; });
}

LocConstFn LocConstFn::from_function(long p, int k, int level, Domain domain,
                                     const std::function<mpz_class(const mpz_class&)>& f) {
  const unsigned long n = ipow(p, static_cast<unsigned long>(level)).get_ui();
  std::vector<mpz_class> table(n, mpz_class(0));
  for (unsigned long r = 0; r < n; ++r) {
    if (domain == Domain::ZpUnits && level > 0 && r % static_cast<unsigned long>(p) == 0) continue;
    // At level 0 the single class of units is represented by 1.
    table[r] = f(mpz_class(domain == Domain::ZpUnits && level == 0 ? 1UL : r));
  }
  return LocConstFn(p, k, level, domain, std::move(table));
}

const mpz_class& LocConstFn::at_residue(const mpz_class& x) const {
  mpz_class r = mod_nonneg(x, level_modulus_);
  if (domain_ == Domain::ZpUnits && !is_unit_residue(x, p_))
    throw std::invalid_argument("LocConstFn: non-unit argument for a units-domain function");
  return table_[r.get_ui()];
}

PadicApprox LocConstFn::operator()(const mpz_class& x) const { return {p_, k_, at_residue(x)}; }

LocConstFn LocConstFn::refined(int level) const {
  if (level < level_) throw std::invalid_argument("LocConstFn::refined: cannot coarsen");
  if (level == level_) return *this;
  const unsigned long n = ipow(p_, static_cast<unsigned long>(level)).get_ui();
  std::vector<mpz_class> table(n, mpz_class(0));
  for (unsigned long r = 0; r < n; ++r) {
    if (domain_ == Domain::ZpUnits && r % static_cast<unsigned long>(p_) == 0) continue;
    table[r] = table_[r % level_modulus_.get_ui()];
  }
  return LocConstFn(p_, k_, level, domain_, std::move(table), outside_);
}

bool LocConstFn::vanishes() const {
  return outside_ == 0 && std::all_of(table_.begin(), table_.end(), [](const mpz_class& c) { return c == 0; });
}

namespace {

template <class Op>
LocConstFn combine(const LocConstFn& f, const LocConstFn& g, Op op) {
  if (f.prime() != g.prime()) throw std::invalid_argument("LocConstFn: mixed primes");
  const int k = std::min(f.precision(), g.precision());
  const int level = std::max(f.level(), g.level());
  const Domain d = (f.domain() == Domain::ZpUnits || g.domain() == Domain::ZpUnits) ? Domain::ZpUnits : Domain::Zp;
  const long p = f.prime();
  LocConstFn out = LocConstFn::from_function(p, k, level, d, [&](const mpz_class& x) {
    return op(f.at_residue(x), g.at_residue(x));
  });
  if (d == Domain::Zp) {
    mpz_class outside = op(f.outside().residue(), g.outside().residue());
    return LocConstFn(p, k, level, d, std::vector<mpz_class>(out.table().begin(), out.table().end()), outside);
  }
  return out;
}

}  // namespace

LocConstFn operator*(const LocConstFn& f, const LocConstFn& g) {
  return combine(f, g, [](const mpz_class& a, const mpz_class& b) { return mpz_class(a * b); });
}

LocConstFn operator+(const LocConstFn& f, const LocConstFn& g) {
  return combine(f, g, [](const mpz_class& a, const mpz_class& b) { return mpz_class(a + b); });
}

bool operator==(const LocConstFn& f, const LocConstFn& g) {
  if (f.p_ != g.p_ || f.k_ != g.k_ || f.domain_ != g.domain_ || f.outside_ != g.outside_) return false;
  const int level = std::max(f.level_, g.level_);
  LocConstFn a = f.refined(level), b = g.refined(level);
  return a.table_ == b.table_;
}

LocConstFn indicator(long p, int k, const mpz_class& a, int m) {
  const mpz_class pm = ipow(p, static_cast<unsigned long>(m));
  const mpz_class target = mod_nonneg(a, pm);
  return LocConstFn::from_function(p, k, m, Domain::Zp,
                                   [&](const mpz_class& x) { return mpz_class(x == target ? 1 : 0); });
}

std::vector<PadicApprox> mahler_coeffs(const LocConstFn& f, long count) {
  if (f.domain() != Domain::Zp) throw std::invalid_argument("mahler_coeffs: function must live on Z_p");
  if (count < 0) throw std::invalid_argument("mahler_coeffs: negative count");
  std::vector<mpz_class> values(static_cast<size_t>(count));
  for (long j = 0; j < count; ++j) values[static_cast<size_t>(j)] = f.at_residue(mpz_class(j));
  auto raw = kernels::parallel::mahler_transform(values, f.modulus());
  std::vector<PadicApprox> out;
  out.reserve(raw.size());
  for (auto& c : raw) out.emplace_back(f.prime(), f.precision(), c);
  return out;
}

PadicApprox mahler_eval(std::span<const PadicApprox> coeffs, const mpz_class& x) {
  if (coeffs.empty()) throw std::invalid_argument("mahler_eval: empty coefficient list");
  if (x < 0) throw std::invalid_argument("mahler_eval: lift must be non-negative");
  const long p = coeffs.front().prime();
  int k = coeffs.front().precision();
  for (const auto& c : coeffs) k = std::min(k, c.precision());
  mpz_class acc = 0;
  mpz_class binom = 1;  // C(x, n)
  for (size_t n = 0; n < coeffs.size(); ++n) {
    if (binom == 0) break;
    acc += binom * coeffs[n].residue();
    binom *= (x - static_cast<long>(n));
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(n + 1));
  }
  return {p, k, acc};
}

SmoothChar::SmoothChar(long p, int k, int conductor, std::vector<mpz_class> table, PadicApprox value_at_p)
    : p_(p), k_(k), conductor_(conductor), table_(std::move(table)), value_at_p_(std::move(value_at_p)) {}

SmoothChar SmoothChar::from_table(long p, int k, int conductor, std::vector<mpz_class> unit_table, PadicApprox value_at_p) {
  if (conductor < 0) throw std::invalid_argument("SmoothChar: negative conductor");
  if (value_at_p.prime() != p) throw std::invalid_argument("SmoothChar: value at p has the wrong prime");
  const unsigned long n = ipow(p, static_cast<unsigned long>(conductor)).get_ui();
  if (unit_table.size() != n) throw std::invalid_argument("SmoothChar: unit table must have length p^conductor");
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  for (unsigned long r = 0; r < n; ++r) {
    if (conductor > 0 && r % static_cast<unsigned long>(p) == 0) unit_table[r] = 0;
    else unit_table[r] = mod_nonneg(unit_table[r], modulus);
  }
  if (unit_table[1 % n] != 1) throw std::invalid_argument("SmoothChar: chi(1) != 1");
  for (unsigned long u = 1; u < n; ++u) {
    if (u % static_cast<unsigned long>(p) == 0) continue;
    for (unsigned long w = u; w < n; ++w) {
      if (w % static_cast<unsigned long>(p) == 0) continue;
      mpz_class prod = mod_nonneg(unit_table[u] * unit_table[w], modulus);
      if (prod != unit_table[(u * w) % n])
        throw std::invalid_argument("SmoothChar: table is not multiplicative at (" + std::to_string(u) + ", " + std::to_string(w) + ")");
    }
  }
  return SmoothChar(p, k, conductor, std::move(unit_table), std::move(value_at_p));
}

SmoothChar SmoothChar::unramified(long p, int k, PadicApprox value_at_p) {
  return from_table(p, k, 0, {mpz_class(1)}, std::move(value_at_p));
}

SmoothChar SmoothChar::teichmuller_power(long p, int k, long i, PadicApprox value_at_p) {
  if (p == 2) {
    const bool odd = (i % 2) != 0;
    return from_table(p, k, 2, {0, 1, 0, odd ? -1 : 1}, std::move(value_at_p));
  }
  const long e = ((i % (p - 1)) + (p - 1)) % (p - 1);
  std::vector<mpz_class> table(static_cast<size_t>(p), mpz_class(0));
  for (long u = 1; u < p; ++u)
    table[static_cast<size_t>(u)] = teichmuller(PadicApprox(p, k, u)).teich.pow(static_cast<unsigned long>(e)).residue();
  return from_table(p, k, 1, std::move(table), std::move(value_at_p));
}

PadicApprox SmoothChar::on_unit(const mpz_class& u) const {
  if (!is_unit_residue(u, p_)) throw std::invalid_argument("SmoothChar::on_unit: argument is not a unit");
  const mpz_class n = ipow(p_, static_cast<unsigned long>(conductor_));
  return {p_, k_, table_[mod_nonneg(u, n).get_ui()]};
}

bool SmoothChar::is_unramified() const {
  return std::all_of(table_.begin(), table_.end(), [](const mpz_class& c) { return c == 0 || c == 1; });
}

SmoothChar SmoothChar::with_value_at_p(PadicApprox v) const {
  if (v.prime() != p_) throw std::invalid_argument("SmoothChar: value at p has the wrong prime");
  return SmoothChar(p_, k_, conductor_, table_, std::move(v));
}

SmoothChar SmoothChar::raised_to(int level) const {
  if (level < conductor_) throw std::invalid_argument("SmoothChar::raised_to: below conductor");
  const unsigned long n = ipow(p_, static_cast<unsigned long>(level)).get_ui();
  const unsigned long c = table_.size();
  std::vector<mpz_class> t(n, mpz_class(0));
  for (unsigned long r = 0; r < n; ++r)
    if (level == 0 || r % static_cast<unsigned long>(p_) != 0) t[r] = table_[r % c];
  return SmoothChar(p_, k_, level, std::move(t), value_at_p_);
}

SmoothChar operator*(const SmoothChar& a, const SmoothChar& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("SmoothChar: mixed primes");
  const int level = std::max(a.conductor_, b.conductor_);
  const int k = std::min(a.k_, b.k_);
  SmoothChar ra = a.raised_to(level), rb = b.raised_to(level);
  const mpz_class modulus = ipow(a.p_, static_cast<unsigned long>(k));
  std::vector<mpz_class> t(ra.table_.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = mod_nonneg(ra.table_[i] * rb.table_[i], modulus);
  return SmoothChar(a.p_, k, level, std::move(t), a.value_at_p_ * b.value_at_p_);
}

bool SmoothChar::same_unit_part(const SmoothChar& o) const {
  if (p_ != o.p_) return false;
  const int level = std::max(conductor_, o.conductor_);
  const int k = std::min(k_, o.k_);
  const mpz_class modulus = ipow(p_, static_cast<unsigned long>(k));
  SmoothChar a = raised_to(level), b = o.raised_to(level);
  for (size_t i = 0; i < a.table_.size(); ++i)
    if (mod_nonneg(a.table_[i], modulus) != mod_nonneg(b.table_[i], modulus)) return false;
  return true;
}

bool operator==(const SmoothChar& a, const SmoothChar& b) {
  return a.same_unit_part(b) && a.value_at_p_.congruent(b.value_at_p_);
}

std::string SmoothChar::table_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t u = 0; u < table_.size(); ++u) {
    if (conductor_ > 0 && u % static_cast<size_t>(p_) == 0) continue;
    if (!first) os << ';';
    os << (conductor_ == 0 ? 1 : u) << ':' << table_[u].get_str();
    first = false;
  }
  return os.str();
}

PadicApprox char_eval(const SmoothChar& chi, const QpPoint& x) {
  if (x.unit.prime() != chi.prime()) throw std::invalid_argument("char_eval: mixed primes");
  if (x.v < 0 && !chi.at_p().is_unit())
    throw PrecisionError("char_eval: insufficient precision for negative valuation (chi(p) is not invertible)");
  return chi.at_p().ipow_signed(x.v) * chi.on_unit(x.unit.residue());
}

PadicApprox chi_ab_eval(const CharTail& tail, const QpPoint& x) {
  const long p = tail.chi.prime();
  if (p == 2) throw std::domain_error("chi_ab_eval: p = 2 is unsupported");
  if (tail.a < 0 || tail.b < 0) throw std::invalid_argument("chi_ab_eval: negative exponent");
  if (x.v < 0 && !tail.chi.at_p().is_unit())
    throw PrecisionError("chi_ab_eval: insufficient precision for negative valuation (chi(p) is not invertible)");
  UnitDecomp d = teichmuller(x.unit);
  PadicApprox value = tail.coefficient * tail.chi.at_p().ipow_signed(x.v);
  if (tail.a > 0) value *= PadicApprox(p, value.precision(), x.v).pow(static_cast<unsigned long>(tail.a));
  value *= tail.chi.on_unit(d.teich.residue()) * tail.chi.on_unit(d.principal.residue());
  if (tail.b > 0) value *= plog(d.principal).pow(static_cast<unsigned long>(tail.b));
  return value;
}

}  // namespace padicmf
