#include "padicmf/kirillov.hpp"

#include <algorithm>
#include <sstream>

namespace padicmf {

namespace {

LocConstFn zero_shell(long p, int k) { return LocConstFn(p, k, 0, Domain::ZpUnits, {mpz_class(0)}); }

mpz_class binomial(unsigned long n, unsigned long r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, r);
  return b;
}

// b = 0 needs no Teichmuller split, so it is also available at p = 2.
PadicApprox tail_value(const CharTail& t, int v, const PadicApprox& unit) {
  if (t.b > 0) return chi_ab_eval(t, {v, unit});
  PadicApprox value = t.coefficient * char_eval(t.chi, {v, unit});
  if (t.a > 0) value *= PadicApprox(t.chi.prime(), value.precision(), v).pow(static_cast<unsigned long>(t.a));
  return value;
}

int tail_level(const std::vector<CharTail>& tails, int k) {
  int level = 0;
  for (const auto& t : tails) {
    level = std::max(level, t.chi.conductor());
    // log(t) mod p^k is determined by t mod p^k.
    if (t.b > 0) level = std::max(level, k);
  }
  return level;
}

LocConstFn mul_shell(const LocConstFn& shell, const std::function<mpz_class(const mpz_class&)>& factor, int level) {
  const int lvl = std::max(shell.level(), level);
  return LocConstFn::from_function(shell.prime(), shell.precision(), lvl, Domain::ZpUnits,
                                   [&](const mpz_class& u) { return mpz_class(shell.at_residue(u) * factor(u)); });
}

}  // namespace

std::vector<CharTail> normalize_tails(const std::vector<CharTail>& tails) {
  std::vector<CharTail> out;
  for (const auto& t : tails) {
    auto it = std::find_if(out.begin(), out.end(), [&](const CharTail& o) { return o.same_shape(t); });
    if (it == out.end()) out.push_back(t);
    else it->coefficient += t.coefficient;
  }
  std::erase_if(out, [](const CharTail& t) { return t.coefficient.is_zero(); });
  return out;
}

LocConstFn materialize_tails(const std::vector<CharTail>& tails, long p, int k, int v) {
  if (tails.empty()) return zero_shell(p, k);
  const int level = tail_level(tails, k);
  return LocConstFn::from_function(p, k, level, Domain::ZpUnits, [&](const mpz_class& u) {
    PadicApprox unit(p, k, u);
    mpz_class acc = 0;
    for (const auto& t : tails) acc += tail_value(t, v, unit).residue();
    return acc;
  });
}

KirillovFn::KirillovFn(long p, int k, int v_min, int v_cut, std::map<int, LocConstFn> shells, std::vector<CharTail> tails)
    : p_(p), k_(k), v_min_(v_min), v_cut_(v_cut), tails_(std::move(tails)) {
  if (v_cut < v_min - 1) throw std::invalid_argument("KirillovFn: v_cut must be >= v_min - 1");
  for (const auto& t : tails_)
    if (t.chi.prime() != p) throw std::invalid_argument("KirillovFn: tail with the wrong prime");
  shells_.assign(static_cast<size_t>(v_cut - v_min + 1), zero_shell(p, k));
  for (auto& [v, f] : shells) {
    if (f.prime() != p || f.domain() != Domain::ZpUnits)
      throw std::invalid_argument("KirillovFn: shells must be unit-domain functions with the same prime");
    if (v >= v_min && v <= v_cut) {
      shells_[static_cast<size_t>(v - v_min)] = f;
    } else if (v > v_cut && v <= v_cut + 3) {
      LocConstFn expected = materialize_tails(tails_, p, k, v);
      const int level = std::max(expected.level(), f.level());
      if (!(expected.refined(level) == LocConstFn(p, k, f.level(), Domain::ZpUnits,
                                                  std::vector<mpz_class>(f.table().begin(), f.table().end()))
                                           .refined(level)))
        throw std::invalid_argument("KirillovFn: shell at v=" + std::to_string(v) + " disagrees with the tails");
    } else {
      throw std::invalid_argument("KirillovFn: shell at v=" + std::to_string(v) + " outside [v_min, v_cut + 3]");
    }
  }
}

KirillovFn KirillovFn::zero(long p, int k) { return KirillovFn(p, k, 0, -1, {}, {}); }

KirillovFn KirillovFn::char_line(const CharTail& tail) {
  return KirillovFn(tail.chi.prime(), tail.chi.precision(), 0, -1, {}, {tail});
}

LocConstFn KirillovFn::shell_at(int v) const {
  if (v < v_min_) return zero_shell(p_, k_);
  if (v <= v_cut_) return shells_[static_cast<size_t>(v - v_min_)];
  return materialize_tails(tails_, p_, k_, v);
}

PadicApprox KirillovFn::operator()(int v, const mpz_class& unit) const {
  if (v < v_min_) return PadicApprox::zero(p_, k_);
  if (v <= v_cut_) return shells_[static_cast<size_t>(v - v_min_)](unit);
  mpz_class acc = 0;
  PadicApprox u(p_, k_, unit);
  for (const auto& t : tails_) acc += tail_value(t, v, u).residue();
  return {p_, k_, acc};
}

KirillovFn KirillovFn::with_cut(int v_cut) const {
  if (v_cut <= v_cut_) return *this;
  KirillovFn out = *this;
  for (int v = v_cut_ + 1; v <= v_cut; ++v) {
    if (v < v_min_) continue;
    out.shells_.push_back(materialize_tails(tails_, p_, k_, v));
  }
  out.v_cut_ = v_cut;
  if (out.v_cut_ < out.v_min_ - 1) out.v_cut_ = out.v_min_ - 1;
  // v_cut may have jumped past an empty shell range; rebuild index base.
  out.shells_.resize(static_cast<size_t>(std::max(0, out.v_cut_ - out.v_min_ + 1)), zero_shell(p_, k_));
  return out;
}

KirillovFn KirillovFn::with_floor(int v_min) const {
  if (v_min >= v_min_) return *this;
  KirillovFn out = *this;
  std::vector<LocConstFn> shells(static_cast<size_t>(v_min_ - v_min), zero_shell(p_, k_));
  if (v_cut_ < v_min_) {
    // No explicit shells yet: the tails start right at v_min_, so materialize them.
    out.shells_.clear();
    out.v_cut_ = v_min_ - 1;
  }
  shells.insert(shells.end(), out.shells_.begin(), out.shells_.end());
  out.shells_ = std::move(shells);
  out.v_min_ = v_min;
  return out;
}

bool KirillovFn::is_zero() const {
  for (const auto& s : shells_)
    if (!s.vanishes()) return false;
  return normalize_tails(tails_).empty();
}

KirillovFn KirillovFn::scaled(const PadicApprox& c) const {
  KirillovFn out = *this;
  for (auto& s : out.shells_)
    s = mul_shell(s, [&](const mpz_class&) { return c.residue(); }, 0);
  for (auto& t : out.tails_) t.coefficient *= c;
  out.tails_ = normalize_tails(out.tails_);
  return out;
}

namespace {

std::pair<KirillovFn, KirillovFn> aligned(const KirillovFn& g, const KirillovFn& h) {
  if (g.prime() != h.prime() || g.precision() != h.precision())
    throw std::invalid_argument("KirillovFn: mixed (p, k)");
  const int lo = std::min(g.v_min(), h.v_min());
  const int cut = std::max(g.v_cut(), h.v_cut());
  return {g.with_floor(lo).with_cut(cut), h.with_floor(lo).with_cut(cut)};
}

KirillovFn combine(const KirillovFn& g, const KirillovFn& h, bool subtract) {
  auto [a, b] = aligned(g, h);
  const long p = a.prime();
  const int k = a.precision();
  std::map<int, LocConstFn> shells;
  for (int v = a.v_min(); v <= a.v_cut(); ++v) {
    LocConstFn x = a.shell_at(v), y = b.shell_at(v);
    const int level = std::max(x.level(), y.level());
    shells.emplace(v, LocConstFn::from_function(p, k, level, Domain::ZpUnits, [&](const mpz_class& u) {
                     return subtract ? mpz_class(x.at_residue(u) - y.at_residue(u)) : mpz_class(x.at_residue(u) + y.at_residue(u));
                   }));
  }
  std::vector<CharTail> tails = a.tails();
  for (auto t : b.tails()) {
    if (subtract) t.coefficient = -t.coefficient;
    tails.push_back(std::move(t));
  }
  return KirillovFn(p, k, a.v_min(), a.v_cut(), std::move(shells), normalize_tails(tails));
}

}  // namespace

KirillovFn operator+(const KirillovFn& g, const KirillovFn& h) { return combine(g, h, false); }
KirillovFn operator-(const KirillovFn& g, const KirillovFn& h) { return combine(g, h, true); }

bool same_function(const KirillovFn& g, const KirillovFn& h) {
  KirillovFn d = g - h;
  return d.is_zero();
}

KirillovFn fn_mul_action(const LocConstFn& f, const KirillovFn& g) {
  if (f.domain() != Domain::Zp) throw std::invalid_argument("fn_mul_action: multiplier must be a function on Z_p");
  if (f.prime() != g.prime()) throw std::invalid_argument("fn_mul_action: mixed primes");
  const long p = g.prime();
  const int k = std::min(f.precision(), g.precision());
  // For v >= level, p^v u lies in p^level Z_p where f is the constant f(0).
  const int cut = std::max(g.v_cut(), f.level() - 1);
  KirillovFn h = g.with_cut(cut);
  std::map<int, LocConstFn> shells;
  for (int v = h.v_min(); v <= h.v_cut(); ++v) {
    LocConstFn s = h.shell_at(v);
    if (v < 0) {
      const mpz_class c = f.outside().residue();
      shells.emplace(v, mul_shell(s, [&](const mpz_class&) { return c; }, 0));
    } else {
      const mpz_class pv = ipow(p, static_cast<unsigned long>(v));
      shells.emplace(v, mul_shell(s, [&](const mpz_class& u) { return f.at_residue(pv * u); },
                                  std::max(0, f.level() - v)));
    }
  }
  const PadicApprox at_zero = f(mpz_class(0));
  std::vector<CharTail> tails;
  for (auto t : h.tails()) {
    t.coefficient *= at_zero;
    tails.push_back(std::move(t));
  }
  return KirillovFn(p, k, h.v_min(), h.v_cut(), std::move(shells), normalize_tails(tails));
}

std::vector<CharTail> fiber_at_zero(const KirillovFn& g) { return normalize_tails(g.tails()); }

KirillovFn kir_up(const KirillovFn& g) {
  const long p = g.prime();
  const int k = g.precision();
  const int v_min = std::max(g.v_min() - 1, 0);
  const int v_cut = std::max(g.v_cut() - 1, v_min - 1);
  std::map<int, LocConstFn> shells;
  for (int v = v_min; v <= v_cut; ++v) shells.emplace(v, g.shell_at(v + 1));
  // chi(p)^(v+1) (v+1)^a = chi(p) * sum_i C(a,i) chi(p)^v v^i.
  std::vector<CharTail> tails;
  for (const auto& t : g.tails()) {
    for (int i = 0; i <= t.a; ++i) {
      CharTail s = t;
      s.a = i;
      s.coefficient = t.coefficient * t.chi.at_p() * binomial(static_cast<unsigned long>(t.a), static_cast<unsigned long>(i));
      tails.push_back(std::move(s));
    }
  }
  return KirillovFn(p, k, v_min, v_cut, std::move(shells), normalize_tails(tails));
}

KirillovFn kir_scale(const QpPoint& a, const KirillovFn& g) {
  const long p = g.prime();
  const int k = g.precision();
  const int w = a.v;
  if (!a.unit.is_unit()) throw std::invalid_argument("kir_scale: unit part is not a unit");
  const mpz_class u0 = a.unit.residue();
  std::map<int, LocConstFn> shells;
  for (int v = g.v_min() - w; v <= g.v_cut() - w; ++v) {
    LocConstFn s = g.shell_at(v + w);
    shells.emplace(v, LocConstFn::from_function(p, k, s.level(), Domain::ZpUnits,
                                                [&](const mpz_class& u) { return s.at_residue(u0 * u); }));
  }
  // chi_{a,b}(p^(v+w) u0 u) expands by the binomial theorem in v and in log t.
  std::vector<CharTail> tails;
  for (const auto& t : g.tails()) {
    PadicApprox base = t.coefficient * char_eval(t.chi, {w, a.unit});
    PadicApprox log_t0 = PadicApprox::zero(p, k);
    if (t.b > 0) log_t0 = plog(teichmuller(a.unit).principal);
    for (int i = 0; i <= t.a; ++i) {
      for (int j = 0; j <= t.b; ++j) {
        CharTail s = t;
        s.a = i;
        s.b = j;
        PadicApprox c = base * binomial(static_cast<unsigned long>(t.a), static_cast<unsigned long>(i)) *
                        binomial(static_cast<unsigned long>(t.b), static_cast<unsigned long>(j));
        c *= PadicApprox(p, k, w).pow(static_cast<unsigned long>(t.a - i));
        c *= log_t0.pow(static_cast<unsigned long>(t.b - j));
        s.coefficient = c;
        tails.push_back(std::move(s));
      }
    }
  }
  return KirillovFn(p, k, g.v_min() - w, g.v_cut() - w, std::move(shells), normalize_tails(tails));
}

std::string kirillov_csv(const KirillovFn& g) {
  std::ostringstream os;
  os << "# kirillov p=" << g.prime() << " k=" << g.precision() << " v_min=" << g.v_min() << " v_cut=" << g.v_cut()
     << "\n";
  os << "v,u,value\n";
  for (int v = g.v_min(); v <= g.v_cut(); ++v) {
    LocConstFn s = g.shell_at(v);
    const auto table = s.table();
    for (size_t u = 0; u < table.size(); ++u) {
      if (s.level() > 0 && u % static_cast<size_t>(g.prime()) == 0) continue;
      os << v << ',' << (s.level() == 0 ? 1 : u) << ',' << table[u].get_str() << "\n";
    }
  }
  os << "# tails\n";
  os << "conductor,chi_table,chi_p,a,b,coefficient\n";
  for (const auto& t : g.tails()) {
    os << t.chi.conductor() << ",\"" << t.chi.table_string() << "\"," << t.chi.at_p().str() << ',' << t.a << ','
       << t.b << ',' << t.coefficient.str() << "\n";
  }
  return os.str();
}

}  // namespace padicmf
