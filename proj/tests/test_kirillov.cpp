#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include "padicmf/kirillov.hpp"

using namespace padicmf;

namespace {

SmoothChar random_char(gmp_randclass& rng, long p, int k, bool unit_at_p) {
  const mpz_class mod = ipow(p, k);
  mpz_class a = rng.get_z_range(mod);
  if (unit_at_p && a % p == 0) a += 1;
  const long i = mpz_class(rng.get_z_range(p - 1)).get_si();
  return SmoothChar::teichmuller_power(p, k, i, PadicApprox(p, k, a));
}

LocConstFn unit_shell(long p, int k, int level, std::vector<long> values) {
  std::vector<mpz_class> table(values.begin(), values.end());
  return LocConstFn(p, k, level, Domain::ZpUnits, std::move(table));
}

KirillovFn apply_up_minus(const KirillovFn& g, const PadicApprox& c, int times) {
  KirillovFn h = g;
  for (int i = 0; i < times; ++i) h = kir_up(h) - h.scaled(c);
  return h;
}

}  // namespace

TEST_CASE("zero and char_line") {
  const KirillovFn z = KirillovFn::zero(5, 3);
  CHECK(z.is_zero());
  CHECK(fiber_at_zero(z).empty());
  const SmoothChar chi = SmoothChar::unramified(5, 3, PadicApprox(5, 3, 7L));
  const CharTail t{chi, 0, 0, PadicApprox::one(5, 3)};
  const KirillovFn g = KirillovFn::char_line(t);
  CHECK_FALSE(g.is_zero());
  CHECK(g(-1, 1).is_zero());
  CHECK(g(0, 3).residue() == 1);
  CHECK(g(2, 3).residue() == 49);
  const auto fiber = fiber_at_zero(g);
  REQUIRE(fiber.size() == 1);
  CHECK(fiber[0].same_shape(t));
  CHECK(fiber[0].coefficient == t.coefficient);
}

TEST_CASE("constructor reconciles overlap shells with the tails") {
  const long p = 5;
  const int k = 3;
  const SmoothChar triv = SmoothChar::unramified(p, k, PadicApprox::one(p, k));
  const CharTail t{triv, 0, 0, PadicApprox::one(p, k)};
  const LocConstFn ones = unit_shell(p, k, 1, {0, 1, 1, 1, 1});
  const LocConstFn twos = unit_shell(p, k, 1, {0, 2, 2, 2, 2});
  CHECK_NOTHROW(KirillovFn(p, k, 0, 1, {{2, ones}, {4, ones}}, {t}));
  CHECK_THROWS_AS(KirillovFn(p, k, 0, 1, {{3, twos}}, {t}), std::invalid_argument);
  CHECK_THROWS_AS(KirillovFn(p, k, 0, 1, {{5, ones}}, {t}), std::invalid_argument);
  CHECK_THROWS_AS(KirillovFn(p, k, 0, 1, {{-1, ones}}, {t}), std::invalid_argument);
  CHECK_THROWS_AS(KirillovFn(p, k, 2, 0, {}, {t}), std::invalid_argument);
}

TEST_CASE("normalize_tails merges shapes and drops zeros") {
  const SmoothChar chi = SmoothChar::unramified(7, 2, PadicApprox(7, 2, 3L));
  const std::vector<CharTail> tails{{chi, 1, 0, PadicApprox(7, 2, 5L)},
                                    {chi, 1, 0, PadicApprox(7, 2, 44L)},
                                    {chi, 0, 0, PadicApprox(7, 2, 2L)}};
  const auto n = normalize_tails(tails);
  REQUIRE(n.size() == 1);
  CHECK(n[0].a == 0);
  CHECK(n[0].coefficient.residue() == 2);
}

TEST_CASE("same_function ignores where the cut sits") {
  const SmoothChar chi = SmoothChar::teichmuller_power(5, 3, 1, PadicApprox(5, 3, 2L));
  const KirillovFn g = KirillovFn::char_line({chi, 1, 0, PadicApprox::one(5, 3)});
  CHECK(same_function(g, g.with_cut(4)));
  CHECK(same_function(g, g.with_floor(-2)));
  CHECK((g - g.with_cut(3)).is_zero());
  CHECK_FALSE(same_function(g, g.scaled(PadicApprox(5, 3, 2L))));
}

TEST_CASE("fn_mul_action") {
  const long p = 5;
  const int k = 3;
  const SmoothChar chi = SmoothChar::teichmuller_power(p, k, 2, PadicApprox(p, k, 3L));
  const KirillovFn g = KirillovFn::char_line({chi, 0, 0, PadicApprox::one(p, k)});

  CHECK(same_function(fn_mul_action(LocConstFn::constant(p, k, 1), g), g));

  const LocConstFn units = LocConstFn::constant(p, k, 1) + LocConstFn(p, k, 1, Domain::Zp, {mpz_class(-1), 0, 0, 0, 0});
  const KirillovFn r = fn_mul_action(units, g);
  CHECK(fiber_at_zero(r).empty());
  for (int v = -2; v <= 6; ++v) {
    for (long u = 1; u < 25; ++u) {
      if (u % p == 0) continue;
      REQUIRE(r(v, u) == (v == 0 ? g(v, u) : PadicApprox::zero(p, k)));
    }
  }

  // Coinvariants do not see multiplication by 1_{Z_p}.
  const KirillovFn h(p, k, -2, 1, {{-2, unit_shell(p, k, 1, {0, 1, 2, 3, 4})}, {0, unit_shell(p, k, 1, {0, 4, 4, 4, 4})}},
                     {{chi, 1, 0, PadicApprox(p, k, 2L)}});
  const auto lhs = fiber_at_zero(fn_mul_action(indicator(p, k, 0, 0), h));
  const auto rhs = fiber_at_zero(h);
  REQUIRE(lhs.size() == rhs.size());
  for (size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs[i].same_shape(rhs[i]));
    CHECK(lhs[i].coefficient == rhs[i].coefficient);
  }
  CHECK(fn_mul_action(indicator(p, k, 0, 0), h)(-2, 1).is_zero());
}

TEST_CASE("fn_mul_action by a non-constant function pointwise") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(5);
  const long p = 3;
  const int k = 3;
  for (int trial = 0; trial < 30; ++trial) {
    const SmoothChar chi = random_char(rng, p, k, true);
    const KirillovFn g = KirillovFn::char_line({chi, trial % 3, 0, PadicApprox::one(p, k)});
    const LocConstFn f = LocConstFn::from_function(p, k, 2, Domain::Zp, [&](const mpz_class&) {
      return mpz_class(rng.get_z_range(ipow(p, k)));
    });
    const KirillovFn r = fn_mul_action(f, g);
    for (int v = 0; v <= 6; ++v) {
      for (long u = 1; u < 27; ++u) {
        if (u % p == 0) continue;
        const mpz_class x = ipow(p, v) * u;
        REQUIRE(r(v, u) == f(x) * g(v, u));
      }
    }
  }
}

TEST_CASE("kir_up eigenline on 100 random characters") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(100);
  for (int i = 0; i < 100; ++i) {
    const long p = (i % 2 == 0) ? 3 : 5;
    const int k = 2 + i % 3;
    const SmoothChar chi = random_char(rng, p, k, i % 4 != 0);
    const KirillovFn g = KirillovFn::char_line({chi, 0, 0, PadicApprox::one(p, k)});
    REQUIRE(same_function(kir_up(g), g.scaled(chi.at_p())));
  }
}

TEST_CASE("kir_up shrinks compact support to zero") {
  const long p = 3;
  const int k = 2;
  const LocConstFn s = unit_shell(p, k, 1, {0, 1, 2});
  const KirillovFn g(p, k, -1, 2, {{-1, s}, {0, s}, {1, s}, {2, s}}, {});
  KirillovFn h = g;
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(h.is_zero());
    h = kir_up(h);
  }
  CHECK(h.is_zero());
}

TEST_CASE("kir_up acts as x -> 1_{Z_p}(x) g(p x)") {
  const long p = 5;
  const int k = 3;
  const SmoothChar chi = SmoothChar::teichmuller_power(p, k, 1, PadicApprox(p, k, 7L));
  const KirillovFn g(p, k, -2, 1, {{-2, unit_shell(p, k, 1, {0, 1, 2, 3, 4})}, {-1, unit_shell(p, k, 1, {0, 9, 9, 9, 9})}},
                     {{chi, 2, 0, PadicApprox(p, k, 3L)}, {chi, 0, 0, PadicApprox::one(p, k)}});
  const KirillovFn up = kir_up(g);
  for (int v = -3; v <= 7; ++v) {
    for (long u = 1; u < 25; ++u) {
      if (u % p == 0) continue;
      REQUIRE(up(v, u) == (v < 0 ? PadicApprox::zero(p, k) : g(v + 1, u)));
    }
  }
}

TEST_CASE("Jordan relation for chi_{a,0} tails under kir_up") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(77);
  for (long p : {5L, 7L}) {
    for (int a = 0; a <= 3; ++a) {
      const SmoothChar chi = random_char(rng, p, 3, true);
      const KirillovFn g = KirillovFn::char_line({chi, a, 0, PadicApprox::one(p, 3)});
      CHECK(apply_up_minus(g, chi.at_p(), a + 1).is_zero());
      CHECK_FALSE(apply_up_minus(g, chi.at_p(), a).is_zero());
    }
  }
}

TEST_CASE("kir_scale") {
  const long p = 5;
  const int k = 3;
  const SmoothChar chi = SmoothChar::teichmuller_power(p, k, 1, PadicApprox(p, k, 2L));
  const KirillovFn g(p, k, -1, 0, {{-1, unit_shell(p, k, 1, {0, 1, 2, 3, 4})}}, {{chi, 1, 1, PadicApprox::one(p, k)}});
  for (int sv : {0, 1, -1}) {
    for (long su : {1L, 2L, 7L, 126L - 125L + 23L}) {
      const QpPoint a{sv, PadicApprox(p, k, su)};
      const KirillovFn h = kir_scale(a, g);
      for (int v = -3; v <= 5; ++v) {
        for (long u = 1; u < 125; u += 3) {
          if (u % p == 0) continue;
          const mpz_class prod = mpz_class(su * u) % 125;
          REQUIRE(h(v, u).congruent(g(v + sv, prod)));
        }
      }
    }
  }
  // A unit scaling of the germ only twists the unit table.
  const KirillovFn line = KirillovFn::char_line({chi, 0, 0, PadicApprox::one(p, k)});
  const KirillovFn scaled = kir_scale({0, PadicApprox(p, k, 2L)}, line);
  CHECK(same_function(scaled, line.scaled(chi.on_unit(2))));
}

TEST_CASE("kirillov_csv") {
  const std::string empty = kirillov_csv(KirillovFn::zero(3, 2));
  CHECK(empty == "# kirillov p=3 k=2 v_min=0 v_cut=-1\nv,u,value\n# tails\nconductor,chi_table,chi_p,a,b,coefficient\n");
  const SmoothChar chi = SmoothChar::unramified(3, 2, PadicApprox(3, 2, 4L));
  const std::string line = kirillov_csv(KirillovFn::char_line({chi, 1, 0, PadicApprox::one(3, 2)}));
  CHECK(line.find("\n0,\"" + chi.table_string() + "\",4,1,0,1\n") != std::string::npos);
}
