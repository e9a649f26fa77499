#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include "padicmf/profinite.hpp"

using namespace padicmf;

namespace {

LocConstFn random_fn(gmp_randclass& rng, long p, int k, int m) {
  const mpz_class mod = ipow(p, k);
  return LocConstFn::from_function(p, k, m, Domain::Zp, [&](const mpz_class&) { return mpz_class(rng.get_z_range(mod)); });
}

int min_valuation(std::span<const PadicApprox> xs) {
  int v = xs.front().precision();
  for (const auto& x : xs) v = std::min(v, x.valuation());
  return v;
}

}  // namespace

TEST_CASE("indicators: idempotent and a partition of unity, exhaustive for p^m <= 125") {
  for (long p : {2L, 3L, 5L, 7L, 11L}) {
    for (int m = 0; ipow(p, m) <= 125; ++m) {
      const int k = 3;
      const long order = ipow(p, m).get_si();
      LocConstFn sum = LocConstFn::constant(p, k, 0);
      for (long a = 0; a < order; ++a) {
        const LocConstFn ind = indicator(p, k, a, m);
        REQUIRE(ind * ind == ind);
        for (long b = a + 1; b < std::min(order, a + 4); ++b) REQUIRE((ind * indicator(p, k, b, m)).vanishes());
        sum = sum + ind;
      }
      for (long x = 0; x < order; ++x) REQUIRE(sum(x).residue() == 1);
    }
  }
  CHECK(indicator(3, 2, 0, 0)(mpz_class(7)).residue() == 1);
  CHECK(indicator(3, 2, 0, 0).outside().is_zero());
}

TEST_CASE("LocConstFn construction") {
  CHECK_THROWS_AS(LocConstFn(3, 2, 1, Domain::Zp, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(LocConstFn(3, 2, 1, Domain::ZpUnits, {1, 1, 1}), std::invalid_argument);
  const LocConstFn u(3, 2, 1, Domain::ZpUnits, {0, 1, 2});
  CHECK(u(mpz_class(5)).residue() == 2);
  CHECK_THROWS_AS(u(mpz_class(6)), std::invalid_argument);
  const LocConstFn f(5, 3, 1, Domain::Zp, {1, 2, 3, 4, 5});
  CHECK(f.refined(2)(mpz_class(13)) == f(mpz_class(3)));
  CHECK(f.refined(2) == f.refined(2));
  CHECK(LocConstFn::coordinate(5, 3)(mpz_class(131)).residue() == 6);
}

TEST_CASE("mahler_coeffs examples") {
  const auto c1 = mahler_coeffs(LocConstFn::constant(5, 3, 1), 5);
  CHECK(c1[0].residue() == 1);
  for (size_t n = 1; n < c1.size(); ++n) CHECK(c1[n].is_zero());

  const auto c2 = mahler_coeffs(indicator(3, 1, 0, 1), 3);
  REQUIRE(c2.size() == 3);
  CHECK(c2[0].residue() == 1);
  CHECK(c2[1].residue() == 2);
  CHECK(c2[2].residue() == 1);
  CHECK(mahler_coeffs(indicator(3, 1, 0, 1), 4)[3].is_zero());

  const auto c3 = mahler_coeffs(LocConstFn::coordinate(5, 2), 50);
  CHECK(c3[0].is_zero());
  CHECK(c3[1].residue() == 1);
  for (size_t n = 2; n < c3.size(); ++n) CHECK(c3[n].is_zero());

  CHECK_THROWS_AS(mahler_coeffs(LocConstFn::constant(5, 3, 1), -1), std::invalid_argument);
}

TEST_CASE("mahler_eval examples") {
  const std::vector<PadicApprox> five{PadicApprox(7, 2, 5L)};
  CHECK(mahler_eval(five, 123).residue() == 5);
  const std::vector<PadicApprox> lin{PadicApprox(5, 3, 0L), PadicApprox(5, 3, 1L)};
  CHECK(mahler_eval(lin, 7).residue() == 7);
}

TEST_CASE("Mahler round trip, lift independence and isometry on 500 random functions") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(500);
  const long primes[] = {3, 5, 7};
  for (int i = 0; i < 500; ++i) {
    const long p = primes[i % 3];
    const int m = 1 + static_cast<int>(mpz_class(rng.get_z_range(3)).get_si());
    const int k = 1 + static_cast<int>(mpz_class(rng.get_z_range(4)).get_si());
    if (p == 7 && m == 3) continue;  // keep the corpus at desk scale
    const LocConstFn f = random_fn(rng, p, k, m);
    const long order = ipow(p, m).get_si();
    const auto c = mahler_coeffs(f, order * k + 3);
    for (size_t n = static_cast<size_t>(order * k); n < c.size(); ++n) REQUIRE(c[n].is_zero());
    std::vector<PadicApprox> values;
    for (long x = 0; x < order; ++x) {
      values.push_back(f(x));
      REQUIRE(mahler_eval(c, x) == f(x));
      REQUIRE(mahler_eval(c, x + order * (1 + i % 5)) == f(x));
    }
    REQUIRE(min_valuation(values) == min_valuation(c));
  }
}

TEST_CASE("SmoothChar construction and evaluation") {
  const PadicApprox one(5, 3, 1L);
  CHECK_THROWS_AS(SmoothChar::from_table(5, 3, 1, {0, 2, 1, 1, 1}, one), std::invalid_argument);
  CHECK_THROWS_AS(SmoothChar::from_table(5, 3, 1, {0, 1, 2, 2, 1}, one), std::invalid_argument);
  const SmoothChar triv = SmoothChar::unramified(5, 3, one);
  CHECK(char_eval(triv, {4, PadicApprox(5, 3, 7L)}).residue() == 1);

  const PadicApprox alpha(5, 3, 17L);
  const SmoothChar ur = SmoothChar::unramified(5, 3, alpha);
  CHECK(char_eval(ur, {2, PadicApprox(5, 3, 3L)}) == alpha * alpha);
  CHECK(char_eval(ur, {-1, PadicApprox(5, 3, 3L)}) == alpha.inverse());
  const SmoothChar nonunit = SmoothChar::unramified(5, 3, PadicApprox(5, 3, 5L));
  CHECK_THROWS_AS(char_eval(nonunit, {-1, PadicApprox(5, 3, 1L)}), PrecisionError);

  const SmoothChar omega = SmoothChar::teichmuller_power(5, 3, 1, one);
  for (long u = 1; u < 125; ++u) {
    if (u % 5 == 0) continue;
    const PadicApprox x(5, 3, u);
    REQUIRE(char_eval(omega, {0, x}) == teichmuller(x).teich);
  }
  CHECK(omega.conductor() == 1);
  CHECK((omega * omega).on_unit(2) == teichmuller(PadicApprox(5, 3, 2L)).teich.pow(2UL));
  CHECK(omega.raised_to(2) == omega);
  CHECK(omega.same_unit_part(omega.with_value_at_p(alpha)));
  CHECK_FALSE(omega == omega.with_value_at_p(alpha));
}

TEST_CASE("chi_ab_eval examples") {
  const PadicApprox one(5, 3, 1L);
  const SmoothChar triv = SmoothChar::unramified(5, 3, one);
  CHECK(chi_ab_eval({triv, 1, 0, one}, {2, PadicApprox(5, 3, 7L)}).residue() == 2);
  CHECK(chi_ab_eval({triv, 0, 1, one}, {0, PadicApprox(5, 3, 6L)}).residue() == 55);
  CHECK_THROWS_AS(chi_ab_eval({SmoothChar::unramified(2, 3, PadicApprox(2, 3, 1L)), 0, 0, PadicApprox(2, 3, 1L)},
                              {0, PadicApprox(2, 3, 1L)}),
                  std::domain_error);
}

TEST_CASE("chi_ab_eval with a = b = 0 equals char_eval, exhaustive on units and v in [-3, 3]") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(99);
  for (long p : {3L, 5L, 7L}) {
    for (int m = 1; m <= 2; ++m) {
      const int k = 3;
      const mpz_class mod = ipow(p, k);
      for (long i = 0; i < p - 1; ++i) {
        mpz_class ar = rng.get_z_range(mod);
        if (ar % p == 0) ar += 1;
        const SmoothChar chi = SmoothChar::teichmuller_power(p, k, i, PadicApprox(p, k, ar)).raised_to(m);
        const PadicApprox c(p, k, 3L);
        const long order = ipow(p, m).get_si();
        for (int v = -3; v <= 3; ++v) {
          for (long u = 1; u < order; ++u) {
            if (u % p == 0) continue;
            const QpPoint x{v, PadicApprox(p, k, u)};
            REQUIRE(chi_ab_eval({chi, 0, 0, c}, x) == c * char_eval(chi, x));
          }
        }
      }
    }
  }
}
