#include "padicmf/report.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <limits>

#include "padicmf/kirillov.hpp"
#include "padicmf/ordinary.hpp"
#include "padicmf/qexp.hpp"

namespace padicmf {

namespace {

using nlohmann::ordered_json;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(gmp_randinit_mt) { gen_.seed(mpz_class(std::to_string(seed))); }
  mpz_class below(const mpz_class& n) { return gen_.get_z_range(n); }
  long below(long n) { return below(mpz_class(n)).get_si(); }
  long unit(long p) { return 1 + below(p - 1); }

 private:
  gmp_randclass gen_;
};

NewformData form_or_delta(const SuiteConfig& cfg, long N) {
  if (cfg.form) return *cfg.form;
  return delta_newform(N);
}

QExpansion random_expansion(Rng& rng, long p, int k, long N) {
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  std::vector<mpz_class> a(static_cast<size_t>(N + 1), mpz_class(0));
  for (long n = 1; n <= N; ++n) a[static_cast<size_t>(n)] = rng.below(modulus);
  return QExpansion(p, k, std::move(a));
}

LocConstFn random_fn(Rng& rng, long p, int k, int level, Domain domain) {
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  const unsigned long size = ipow(p, static_cast<unsigned long>(level)).get_ui();
  std::vector<mpz_class> table(size, mpz_class(0));
  for (unsigned long r = 0; r < size; ++r) {
    if (domain == Domain::ZpUnits && level > 0 && r % static_cast<unsigned long>(p) == 0) continue;
    table[r] = rng.below(modulus);
  }
  return LocConstFn(p, k, level, domain, std::move(table), domain == Domain::Zp ? rng.below(modulus) : mpz_class(0));
}

SmoothChar random_char(Rng& rng, long p, int k, bool unit_at_p) {
  const mpz_class modulus = ipow(p, static_cast<unsigned long>(k));
  mpz_class v = rng.below(modulus);
  if (unit_at_p) {
    while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(p))) v = rng.below(modulus);
  }
  return SmoothChar::teichmuller_power(p, k, rng.below(std::max(1L, p - 1)), PadicApprox(p, k, v));
}

CheckResult check(std::string identity, std::string anchor, ordered_json params, bool pass, std::string detail = {}) {
  return {std::move(identity), std::move(anchor), std::move(params), pass, std::move(detail)};
}

// Runs `body`; an exception becomes a failed check carrying its message.
template <class F>
CheckResult guarded(const std::string& identity, const std::string& anchor, const ordered_json& params, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return check(identity, anchor, params, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ordered_json suite_json(const SuiteResult& r) {
  ordered_json out;
  out["suite"] = r.suite;
  out["pass"] = r.pass();
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"identity", c.identity}, {"anchor", c.anchor}, {"params", c.params}, {"verdict", c.pass ? "pass" : "fail"},
                      {"detail", c.detail}});
  out["checks"] = checks;
  if (!r.extra.is_null()) out["details"] = r.extra;
  return out;
}

SuiteResult fourier_suite(const SuiteConfig& cfg) {
  SuiteResult res{"fourier", {}, {}};
  Rng rng(cfg.seed);
  const NewformData form = form_or_delta(cfg, cfg.N);
  std::vector<std::pair<std::string, QExpansion>> inputs;
  inputs.emplace_back(form.name.empty() ? "form" : form.name, form.expansion(cfg.p, cfg.k).truncated(std::min(cfg.N, form.truncation())));
  for (int i = 0; i < cfg.random_count; ++i) inputs.emplace_back("random " + std::to_string(i), random_expansion(rng, cfg.p, cfg.k, cfg.N));
  const std::string anchor = "averaging the circle action against zeta^(-a j) equals multiplication by 1_{a + p^m Z_p}";
  for (int m = 1; m <= std::min(2, cfg.k - 1); ++m) {
    const long order = ipow(cfg.p, static_cast<unsigned long>(m)).get_si();
    long failures = 0, total = 0;
    std::string first;
    for (const auto& [name, f] : inputs) {
      const std::vector<CycloQExpansion> averages = circle_averages(f, m);
      for (long a = 0; a < order; ++a) {
        ++total;
        const QExpansion lhs = as_plain(averages[static_cast<size_t>(a)]);
        const QExpansion rhs = twist(f, indicator(cfg.p, cfg.k, a, m)).reduced(cfg.k - m);
        if (!(lhs == rhs) && failures++ == 0) first = name + ", a = " + std::to_string(a);
      }
    }
    res.checks.push_back(check("circle average = indicator twist", anchor,
                               {{"p", cfg.p}, {"k", cfg.k}, {"m", m}, {"N", cfg.N}, {"inputs", inputs.size()}, {"cases", total}},
                               failures == 0, failures == 0 ? "exact at precision k - m" : "first failure: " + first));
  }
  if (res.checks.empty())
    res.checks.push_back(check("circle average = indicator twist", anchor, {{"k", cfg.k}}, false, "needs k >= 2"));
  return res;
}

SuiteResult kirillov_suite(const SuiteConfig& cfg) {
  SuiteResult res{"kirillov", {}, {}};
  Rng rng(cfg.seed);
  const long p = cfg.p;
  const int k = cfg.k;
  const ordered_json params{{"p", p}, {"k", k}, {"N", cfg.N}, {"inputs", cfg.random_count}};
  std::vector<QExpansion> inputs;
  for (int i = 0; i < cfg.random_count; ++i) inputs.push_back(random_expansion(rng, p, k, cfg.N));

  const std::string up_kir_anchor = "U_p acts on Kirillov functions by (U_p f)(x) = f(p x)";
  res.checks.push_back(guarded("Kir(U_p f)(n) = Kir(f)(p n)", up_kir_anchor, params, [&] {
    for (const auto& f : inputs) {
      const KirTotal up = kir_total(hecke_U(p, f)), base = kir_total(f);
      for (long n = 1; n <= up.window(); ++n)
        if (!(up.at(n) == base.at(p * n)))
          return check("Kir(U_p f)(n) = Kir(f)(p n)", up_kir_anchor, params, false, "n = " + std::to_string(n));
    }
    return check("Kir(U_p f)(n) = Kir(f)(p n)", up_kir_anchor, params, true);
  }));

  const std::string theta_anchor = "theta = q d/dq acts on Kirillov functions as multiplication by the coordinate z";
  res.checks.push_back(guarded("Kir(theta f)(n) = n Kir(f)(n)", theta_anchor, params, [&] {
    const LocConstFn z = LocConstFn::coordinate(p, k);
    for (const auto& f : inputs) {
      const KirTotal lhs = kir_total(theta(f)), base = kir_total(f), via_z = fn_mul_action(z, base);
      for (long n = 1; n <= lhs.window(); ++n) {
        if (!(lhs.at(n) == base.at(n) * n) || !(lhs.at(n) == via_z.at(n)))
          return check("Kir(theta f)(n) = n Kir(f)(n)", theta_anchor, params, false, "n = " + std::to_string(n));
      }
    }
    return check("Kir(theta f)(n) = n Kir(f)(n)", theta_anchor, params, true);
  }));

  const std::string mul_anchor = "the dual of the circle action is multiplication by continuous functions on Z_p";
  res.checks.push_back(guarded("Kir(g . f)(n) = g(n) Kir(f)(n)", mul_anchor, params, [&] {
    for (const auto& f : inputs) {
      const LocConstFn g = random_fn(rng, p, k, 1 + static_cast<int>(rng.below(2L)), Domain::Zp);
      const KirTotal base = kir_total(f), q_side = kir_total(twist(f, g)), k_side = fn_mul_action(g, base);
      for (long n = 1; n <= q_side.window(); ++n) {
        const PadicApprox pointwise = g(mpz_class(n)) * base.at(n);
        if (!(q_side.at(n) == k_side.at(n)) || !(k_side.at(n) == pointwise))
          return check("Kir(g . f)(n) = g(n) Kir(f)(n)", mul_anchor, params, false, "n = " + std::to_string(n));
      }
    }
    return check("Kir(g . f)(n) = g(n) Kir(f)(n)", mul_anchor, params, true);
  }));

  const std::string germ_anchor = "m and 1_{Z_p} m have the same image in the fiber at 0";
  res.checks.push_back(guarded("fiber_at_zero(1_{Z_p} g) = fiber_at_zero(g)", germ_anchor, params, [&] {
    const LocConstFn one_zp = indicator(p, k, 0, 0);
    for (int i = 0; i < cfg.random_count; ++i) {
      const SmoothChar chi = random_char(rng, p, k, true);
      std::map<int, LocConstFn> shells;
      for (int v = -2; v <= 1; ++v) shells.emplace(v, random_fn(rng, p, k, 1, Domain::ZpUnits));
      const KirillovFn g(p, k, -2, 1, shells, {CharTail{chi, static_cast<int>(rng.below(3L)), 0, PadicApprox::one(p, k)}});
      const KirillovFn h = fn_mul_action(one_zp, g);
      const auto a = fiber_at_zero(g), b = fiber_at_zero(h);
      const bool same = a.size() == b.size() &&
                        std::equal(a.begin(), a.end(), b.begin(), [](const CharTail& x, const CharTail& y) {
                          return x.same_shape(y) && x.coefficient == y.coefficient;
                        });
      if (!same) return check("fiber_at_zero(1_{Z_p} g) = fiber_at_zero(g)", germ_anchor, params, false, "input " + std::to_string(i));
    }
    return check("fiber_at_zero(1_{Z_p} g) = fiber_at_zero(g)", germ_anchor, params, true);
  }));

  const std::string up_anchor = "1_{Z_p} chi is a U_p eigenline with eigenvalue chi(p)";
  res.checks.push_back(guarded("kir_up(1_{Z_p} chi) = chi(p) 1_{Z_p} chi", up_anchor, params, [&] {
    for (int i = 0; i < cfg.random_count; ++i) {
      const SmoothChar chi = random_char(rng, p, k, false);
      const KirillovFn line = KirillovFn::char_line(CharTail{chi, 0, 0, PadicApprox::one(p, k)});
      if (!same_function(kir_up(line), line.scaled(chi.at_p())))
        return check("kir_up(1_{Z_p} chi) = chi(p) 1_{Z_p} chi", up_anchor, params, false, "character " + chi.table_string());
    }
    return check("kir_up(1_{Z_p} chi) = chi(p) 1_{Z_p} chi", up_anchor, params, true);
  }));
  return res;
}

SuiteResult ordinary_suite(const SuiteConfig& cfg) {
  SuiteResult res{"ordinary", {}, {}};
  const long p = cfg.p;
  const NewformData form = form_or_delta(cfg, 2 * cfg.N);
  const ordered_json params{{"p", p}, {"k", cfg.k}, {"N", cfg.N}, {"form", form.name}};
  const std::string anchor = "ker(e) = vectors whose Kirillov function vanishes near 0 (U_p^n kills them)";
  auto lattice_at = [&](long N, int k) {
    const QExpansion f = form.expansion(p, k).truncated(N);
    return HeckeLattice(p, {f, f.dilated(p)});
  };
  try {
    if (form.level % p == 0) throw std::invalid_argument("p divides the level; the lattice {f(q), f(q^p)} is not U_p-stable");
    const HeckeLattice lattice = lattice_at(std::min(cfg.N, form.truncation()), cfg.k);
    const PkMatrix m = up_matrix(lattice);
    const ProjectorResult proj = ordinary_projector(m);
    res.checks.push_back(check("e^2 = e and e M = M e", "e = lim U_p^(n!)", params,
                               proj.e * proj.e == proj.e && proj.e * m == m * proj.e, "steps = " + std::to_string(proj.steps)));
    const KernelReport kr = kernel_check(lattice, m, proj.e);
    res.checks.push_back(check("ker(e) = ker(U_p^n0) on the window", anchor, params, kr.verdict == "equal", kr.window_detail));
    const auto tails = coinvariant_tails(m, proj.e);
    const PadicApprox a(p, cfg.k, form.coeffs[static_cast<size_t>(p)]);
    if (a.is_unit()) {
      const PadicApprox c(p, cfg.k, form.nebentypus(p) * ipow(p, static_cast<unsigned long>(form.weight - 1)));
      const PadicApprox alpha = hensel_unit_root(a, c);
      const bool ok = tails.size() == 1 && tails[0].alpha == alpha && kr.rank_e == 1;
      res.checks.push_back(check("unit eigenvalue of e M = unit root of x^2 - a_p x + chi(p) p^(w-1)",
                                 "the ordinary line is cut out by the unit root", params, ok,
                                 "alpha = " + alpha.str() + ", rank(e) = " + std::to_string(kr.rank_e)));
    } else {
      res.checks.push_back(check("non-ordinary form: e = 0", "e = lim U_p^(n!)", params, kr.rank_e == 0 && tails.empty(),
                                 "rank(e) = " + std::to_string(kr.rank_e)));
    }
    const size_t rank = kr.rank_e;
    const long doubled = 2 * cfg.N;
    if (form.truncation() >= doubled) {
      const HeckeLattice wide = lattice_at(doubled, cfg.k);
      const size_t r2 = ordinary_projector(up_matrix(wide)).e.rank_mod_p();
      res.checks.push_back(check("rank(e) stable when N doubles", "finite-rank ordinary part", {{"N", doubled}}, r2 == rank,
                                 "rank = " + std::to_string(r2)));
    }
    const HeckeLattice finer = lattice_at(std::min(cfg.N, form.truncation()), cfg.k + 1);
    const size_t r3 = ordinary_projector(up_matrix(finer)).e.rank_mod_p();
    res.checks.push_back(check("rank(e) stable when k increases", "finite-rank ordinary part", {{"k", cfg.k + 1}}, r3 == rank,
                               "rank = " + std::to_string(r3)));
    res.extra = ordinary_report(lattice);
  } catch (const std::exception& e) {
    res.checks.push_back(check("ordinary lattice report", anchor, params, false, std::string("exception: ") + e.what()));
  }
  return res;
}

SuiteResult doublecoset_suite(const SuiteConfig& cfg) {
  SuiteResult res{"doublecoset", {}, {}};
  const NewformData form = form_or_delta(cfg, cfg.N);
  const std::string anchor = "U_p is the double coset operator (1/p) sum_i f(zeta_p^i q^(1/p))";
  std::vector<std::pair<std::string, QExpansion>> inputs;
  inputs.emplace_back(form.name.empty() ? "form" : form.name, form.expansion(cfg.p, cfg.k).truncated(std::min(cfg.N, form.truncation())));
  inputs.emplace_back("zero", QExpansion::zero(cfg.p, cfg.k, cfg.N));
  std::vector<mpz_class> q(static_cast<size_t>(cfg.N + 1), mpz_class(0));
  q[1] = 1;
  inputs.emplace_back("q", QExpansion(cfg.p, cfg.k, q));
  for (const auto& [name, f] : inputs) {
    const ordered_json params{{"p", cfg.p}, {"k", cfg.k}, {"N", f.truncation()}, {"input", name}};
    res.checks.push_back(guarded("double coset average = hecke_U", anchor, params, [&] {
      const DoubleCosetResult r = verify_double_coset(cfg.p, f);
      return check("double coset average = hecke_U", anchor, params, r.ok,
                   r.ok ? "exact at precision k - 1 on indices <= " + std::to_string(r.window) : r.detail);
    }));
  }
  return res;
}

SuiteResult local_suite(const SuiteConfig& cfg) {
  SuiteResult res{"local", {}, {}};
  Rng rng(cfg.seed);
  const long p = cfg.p;
  const int kk = 16;  // values p^v stay exact for v < kk
  const ordered_json params{{"p", p}, {"seed", cfg.seed}};

  res.checks.push_back(guarded("dim J(pi) = 2 / 1 / 0 by kind", "Jacquet dimension table", params, [&] {
    for (int i = 0; i < 200; ++i) {
      const int w = 2 + static_cast<int>(rng.below(11L));
      const int v1 = static_cast<int>(rng.below(static_cast<long>(w)));
      const SmoothChar a = SmoothChar::teichmuller_power(p, kk, rng.below(std::max(1L, p - 1)), PadicApprox(p, kk, ipow(p, v1) * rng.unit(p)));
      const SmoothChar b = SmoothChar::teichmuller_power(p, kk, rng.below(std::max(1L, p - 1)),
                                                         PadicApprox(p, kk, ipow(p, static_cast<unsigned long>(w - 1 - v1)) * rng.unit(p)));
      const LocalParams ps = principal_series(a, b, w);
      if (classify(ps).irreducible && (jacquet_dim(ps) != 2 || jacquet(ps).size() != 2))
        return check("dim J(pi) = 2 / 1 / 0 by kind", "", params, false, "principal series sample " + std::to_string(i));
      const int ws = 2 + 2 * static_cast<int>(rng.below(6L));
      const SmoothChar s = SmoothChar::teichmuller_power(p, kk, rng.below(std::max(1L, p - 1)),
                                                         PadicApprox(p, kk, ipow(p, static_cast<unsigned long>((ws - 2) / 2)) * rng.unit(p)));
      const LocalParams sp = special(s, ws);
      if (jacquet_dim(sp) != 1 || jacquet(sp).size() != 1)
        return check("dim J(pi) = 2 / 1 / 0 by kind", "", params, false, "special sample " + std::to_string(i));
      const LocalParams sc = supercuspidal(p, kk, w);
      if (jacquet_dim(sc) != 0 || !jacquet(sc).empty())
        return check("dim J(pi) = 2 / 1 / 0 by kind", "", params, false, "supercuspidal sample " + std::to_string(i));
    }
    return check("dim J(pi) = 2 / 1 / 0 by kind", "Jacquet dimension table", params, true, "200 samples per kind");
  }));

  const std::string completion_anchor = "only the unit-valuation line 1_{Z_p} kappa_ord survives completion";
  res.checks.push_back(guarded("completion = unit-valuation lines", completion_anchor, params, [&] {
    long cases = 0;
    for (int w = 2; w <= 12; ++w) {
      for (int v1 = 0; v1 <= w - 1; ++v1) {
        const SmoothChar a = SmoothChar::teichmuller_power(p, kk, rng.below(std::max(1L, p - 1)), PadicApprox(p, kk, ipow(p, v1) * rng.unit(p)));
        const SmoothChar b = SmoothChar::teichmuller_power(p, kk, rng.below(std::max(1L, p - 1)),
                                                           PadicApprox(p, kk, ipow(p, static_cast<unsigned long>(w - 1 - v1)) * rng.unit(p)));
        const LocalParams ps = principal_series(a, b, w);
        if (!classify(ps).irreducible) continue;
        ++cases;
        const auto done = completion_basis(ps);
        std::vector<CharTail> expect;
        for (const auto& t : kirillov_lines(ps))
          if (t.chi.at_p().valuation() == 0) expect.push_back(t);
        const bool ok = done.size() <= 1 && done.size() == expect.size() &&
                        std::equal(done.begin(), done.end(), expect.begin(), [](const CharTail& x, const CharTail& y) { return x.same_shape(y); });
        if (!ok) return check("completion = unit-valuation lines", completion_anchor, params, false,
                              "w = " + std::to_string(w) + ", v(alpha) = " + std::to_string(v1));
      }
    }
    return check("completion = unit-valuation lines", completion_anchor, params, true, std::to_string(cases) + " valuation pairs");
  }));

  const std::string jordan_anchor = "chi_{a,b}(p^j u) = chi(p)^j j^a ... is a generalized U_p eigenfunction";
  res.checks.push_back(guarded("(kir_up - chi(p))^(a+1) kills the chi_{a,0} line, ^a does not", jordan_anchor, params, [&] {
    for (int kj = 2; kj <= std::min(cfg.k, 4); ++kj) {
      for (int i = 0; i < 50; ++i) {
        const SmoothChar chi = random_char(rng, p, kj, true);
        for (int a = 0; a <= 3; ++a) {
          KirillovFn g = KirillovFn::char_line(CharTail{chi, a, 0, PadicApprox::one(p, kj)});
          KirillovFn before = g;
          for (int s = 0; s <= a; ++s) {
            before = g;
            g = kir_up(g) - g.scaled(chi.at_p());
          }
          if (!g.is_zero() || before.is_zero())
            return check("(kir_up - chi(p))^(a+1) kills the chi_{a,0} line, ^a does not", jordan_anchor, params, false,
                         "k = " + std::to_string(kj) + ", a = " + std::to_string(a) + ", chi = " + chi.table_string());
        }
      }
    }
    return check("(kir_up - chi(p))^(a+1) kills the chi_{a,0} line, ^a does not", jordan_anchor, params, true,
                 "a <= 3, 50 characters per k");
  }));
  return res;
}

LocalParams newform_local_params(const NewformData& f, long p, int k, std::optional<RepKind> local_kind,
                                 std::vector<std::string>& notes) {
  if (f.truncation() < p) throw std::invalid_argument("newform truncation is below p");
  const mpz_class& ap = f.coeffs[static_cast<size_t>(p)];
  const int w = f.weight;
  if (f.level % p == 0) {
    if (!local_kind) throw std::invalid_argument("p divides the level; pass the local kind (special or supercuspidal)");
    if (*local_kind == RepKind::Supercuspidal) return supercuspidal(p, k, w);
    if (*local_kind != RepKind::Special) throw std::invalid_argument("only special or supercuspidal local kinds are supported when p | level");
    if (ap == 0) throw std::invalid_argument("a_p = 0 is not a special (Steinberg) U_p eigenvalue");
    return special(SmoothChar::unramified(p, k, PadicApprox(p, k, ap)), w);
  }
  const mpz_class eps = f.nebentypus(p);
  const PadicApprox a(p, k, ap);
  const PadicApprox c(p, k, eps * ipow(p, static_cast<unsigned long>(w - 1)));
  const int vc = w - 1;
  const int va = ap == 0 ? std::numeric_limits<int>::max() : exact_valuation(ap, p);
  LocalParams out;
  if (va == 0) {
    const PadicApprox alpha = hensel_unit_root(a, c);
    const PadicApprox beta = a - alpha;
    out = principal_series(LocalChar{SmoothChar::unramified(p, k, alpha), 0.0, true},
                           LocalChar{SmoothChar::unramified(p, k, beta), static_cast<double>(vc), true}, p, k, w);
  } else if (2L * va < vc) {
    try {
      auto roots = split_quadratic(a, c);
      if (!roots) throw PrecisionError("roots not separated");
      out = principal_series(LocalChar{SmoothChar::unramified(p, k, roots->small), static_cast<double>(va), true},
                             LocalChar{SmoothChar::unramified(p, k, roots->large), static_cast<double>(vc - va), true}, p, k, w);
    } catch (const PrecisionError& e) {
      notes.push_back(std::string("roots in Z_p but not resolved at this precision: ") + e.what());
      out = principal_series(LocalChar{std::nullopt, static_cast<double>(va), true},
                             LocalChar{std::nullopt, static_cast<double>(vc - va), true}, p, k, w);
    }
  } else {
    notes.push_back("Newton polygon has a single slope; Frobenius eigenvalues known by valuation only");
    out = principal_series(LocalChar{std::nullopt, vc / 2.0, true}, LocalChar{std::nullopt, vc / 2.0, true}, p, k, w);
  }
  out.det_unit = PadicApprox(p, k, eps);
  return out;
}

ordered_json predict_report(const NewformData& f, long p, int k, Splitness splitness, int m_window,
                            std::optional<RepKind> local_kind) {
  std::vector<std::string> notes = f.warnings;
  const LocalParams params = newform_local_params(f, p, k, local_kind, notes);
  ordered_json out;
  out["form"] = f.name;
  out["level"] = f.level;
  out["weight"] = f.weight;
  out["p"] = p;
  out["k"] = k;
  const PadicApprox ap(p, k, f.coeffs[static_cast<size_t>(p)]);
  out["a_p"] = f.coeffs[static_cast<size_t>(p)].get_str();
  const bool ordinary = params.kind != RepKind::Supercuspidal && !params.chars.empty() &&
                        std::any_of(params.chars.begin(), params.chars.end(), [](const LocalChar& c) { return c.valuation == 0; });
  out["ordinary"] = ordinary;
  ordered_json roots = ordered_json::array();
  for (const auto& c : params.chars)
    roots.push_back({{"value", c.chi ? ordered_json(c.chi->at_p().str()) : ordered_json(nullptr)},
                     {"precision", c.chi ? ordered_json(c.chi->at_p().precision()) : ordered_json(nullptr)},
                     {"valuation", c.valuation}});
  out["frobenius_eigenvalues"] = roots;
  out["alpha"] = ordinary ? ordered_json(params.chars[0].chi->at_p().str()) : ordered_json(nullptr);
  if (splitness == Splitness::Split && f.cm_verified) notes.push_back("split input backed by CM metadata");
  ordered_json local = local_report(params, splitness, m_window);
  for (const auto& w : local["warnings"]) notes.push_back(w.get<std::string>());
  out["local"] = std::move(local);
  out["notes"] = notes;
  return out;
}

}  // namespace padicmf
