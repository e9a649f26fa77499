#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include "padicmf/cyclo.hpp"
#include "padicmf/padic.hpp"

using namespace padicmf;

namespace {

// log(u) from exact rational partial sums; every term is p-integral for p odd.
mpz_class plog_oracle(long p, int k, const mpz_class& u) {
  const mpz_class x = u - 1;
  mpq_class sum = 0;
  mpz_class xn = 1;
  for (long n = 1; n <= 60L * k; ++n) {
    xn *= x;
    mpq_class term(xn, n);
    term.canonicalize();
    sum += (n % 2 == 1) ? term : mpq_class(-term);
  }
  const mpz_class mod = ipow(p, static_cast<unsigned long>(k));
  mpz_class inv;
  REQUIRE(mpz_invert(inv.get_mpz_t(), sum.get_den().get_mpz_t(), mod.get_mpz_t()) != 0);
  mpz_class r = sum.get_num() * inv % mod;
  if (r < 0) r += mod;
  return r;
}

}  // namespace

TEST_CASE("valuation") {
  CHECK(PadicApprox(5, 3, 0L).valuation() == 3);
  CHECK(PadicApprox(5, 3, 50L).valuation() == 2);
  CHECK(PadicApprox(11, 5, 534612L).valuation() == 0);
  CHECK(PadicApprox(2, 10, -24L).valuation() == 3);
}

TEST_CASE("residues stay canonical and mixed precision reduces") {
  const PadicApprox a(7, 3, -1L);
  CHECK(a.residue() == 342);
  CHECK(a.balanced() == -1);
  const PadicApprox b(7, 2, 10L);
  const PadicApprox s = a + b;
  CHECK(s.precision() == 2);
  CHECK(s.residue() == 9);
  CHECK_THROWS_AS(PadicApprox(7, 2, 1L) + PadicApprox(5, 2, 1L), std::invalid_argument);
}

TEST_CASE("ring laws and valuation of products on random triples") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(7);
  for (long p : {2L, 3L, 5L, 7L}) {
    const int k = 6;
    const mpz_class mod = ipow(p, k);
    for (int i = 0; i < 2500; ++i) {
      const PadicApprox a(p, k, rng.get_z_range(mod)), b(p, k, rng.get_z_range(mod)), c(p, k, rng.get_z_range(mod));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a - b) + b == a);
      REQUIRE((a * b).valuation() == std::min(k, a.valuation() + b.valuation()));
    }
  }
}

TEST_CASE("inverse and divide_by_p_power") {
  const PadicApprox u(5, 4, 3L);
  CHECK((u * u.inverse()).residue() == 1);
  CHECK_THROWS_AS(PadicApprox(5, 4, 10L).inverse(), std::domain_error);
  const PadicApprox v = PadicApprox(5, 4, 50L).divide_by_p_power(2);
  CHECK(v.precision() == 2);
  CHECK(v.residue() == 2);
  CHECK_THROWS_AS(PadicApprox(5, 4, 10L).divide_by_p_power(2), std::domain_error);
  CHECK_THROWS_AS(PadicApprox(5, 2, 0L).divide_by_p_power(2), PrecisionError);
}

TEST_CASE("hensel_unit_root") {
  CHECK(hensel_unit_root(PadicApprox(5, 3, 6L), PadicApprox(5, 3, 5L)).residue() == 1);
  CHECK(hensel_unit_root(PadicApprox(5, 3, 1L), PadicApprox(5, 3, 0L)).residue() == 1);
  const mpz_class m11 = ipow(11, 5);
  const PadicApprox a(11, 5, mpz_class(534612)), c(11, 5, ipow(11, 11));
  CHECK(c.residue() == 0);
  CHECK(hensel_unit_root(a, c).residue() == mpz_class(534612) % m11);
  CHECK_THROWS_AS(hensel_unit_root(PadicApprox(5, 3, 5L), PadicApprox(5, 3, 5L)), std::domain_error);
  CHECK_THROWS_AS(hensel_unit_root(PadicApprox(5, 3, 6L), PadicApprox(5, 3, 2L)), std::domain_error);

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(11);
  for (long p : {3L, 5L, 7L, 11L}) {
    const int k = 8;
    const mpz_class mod = ipow(p, k);
    for (int i = 0; i < 200; ++i) {
      mpz_class ar = rng.get_z_range(mod);
      if (ar % p == 0) ar += 1;
      const PadicApprox a(p, k, ar), c(p, k, p * rng.get_z_range(mod));
      const PadicApprox alpha = hensel_unit_root(a, c);
      REQUIRE(alpha.is_unit());
      REQUIRE((alpha * alpha - a * alpha + c).is_zero());
      REQUIRE(alpha.reduced(1) == a.reduced(1));
    }
  }
}

TEST_CASE("teichmuller") {
  const UnitDecomp d = teichmuller(PadicApprox(5, 2, 2L));
  CHECK(d.teich.residue() == 7);
  CHECK(d.principal == PadicApprox(5, 2, 2L) * PadicApprox(5, 2, 7L).inverse());
  CHECK(teichmuller(PadicApprox(5, 2, 1L)).teich.residue() == 1);
  CHECK(teichmuller(PadicApprox(3, 3, 26L)).teich.residue() == 26);
  CHECK_THROWS_AS(teichmuller(PadicApprox(5, 2, 10L)), std::domain_error);

  for (long p : {2L, 3L, 5L, 7L}) {
    const int k = 5;
    const long mod = ipow(p, k).get_si();
    for (long u = 1; u < mod; ++u) {
      if (u % p == 0) continue;
      const PadicApprox x(p, k, u);
      const UnitDecomp t = teichmuller(x);
      if (p == 2) REQUIRE(t.teich.pow(2UL).residue() == 1);
      else REQUIRE(t.teich.pow(static_cast<unsigned long>(p)) == t.teich);
      REQUIRE(t.teich * t.principal == x);
      if (p == 2) REQUIRE(t.principal.residue() % 4 == 1);
      else REQUIRE(t.principal.residue() % p == 1);
    }
  }
}

TEST_CASE("plog values") {
  CHECK(plog(PadicApprox(5, 3, 1L)).is_zero());
  CHECK(plog(PadicApprox(5, 3, 6L)).residue() == 55);
  CHECK(plog(PadicApprox(3, 2, 4L)).residue() == plog_oracle(3, 2, 4));
  for (long p : {3L, 5L, 7L}) {
    for (long u = 1 + p; u < 40 * p; u += p) {
      REQUIRE(plog(PadicApprox(p, 6, u)).residue() == plog_oracle(p, 6, u));
    }
  }
  CHECK_THROWS_AS(plog(PadicApprox(5, 3, 2L)), std::domain_error);
  CHECK_THROWS_AS(plog(PadicApprox(2, 5, 3L)), std::domain_error);
}

TEST_CASE("plog is a homomorphism up to the documented slack") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(3);
  for (long p : {2L, 3L, 5L, 7L}) {
    const int k = 7;
    const mpz_class mod = ipow(p, k);
    const long q = p == 2 ? 4 : p;
    const int slack = plog_slack(p, k);
    for (int i = 0; i < 300; ++i) {
      const PadicApprox u(p, k, 1 + q * rng.get_z_range(mod)), v(p, k, 1 + q * rng.get_z_range(mod));
      const PadicApprox lhs = plog(u * v), rhs = plog(u) + plog(v);
      REQUIRE(lhs.reduced(k - slack) == rhs.reduced(k - slack));
    }
  }
}

TEST_CASE("split_quadratic and newton_slopes") {
  // x^2 - 6x + 5 = (x - 1)(x - 5)
  const auto r = split_quadratic(PadicApprox(5, 4, 6L), PadicApprox(5, 4, 5L));
  REQUIRE(r.has_value());
  CHECK(r->small.residue() == 1);
  CHECK(r->small_valuation == 0);
  CHECK(r->large_valuation == 1);
  CHECK(r->large.reduced(r->large.precision()).residue() == mpz_class(5) % r->large.modulus());
  CHECK(newton_slopes(PadicApprox(2, 20, -24L), PadicApprox(2, 20, ipow(2, 11))) == std::pair<int, int>{3, 8});
  CHECK_FALSE(split_quadratic(PadicApprox(3, 6, 0L), PadicApprox(3, 6, 3L)).has_value());
}

TEST_CASE("cyclotomic ring") {
  for (long p : {2L, 3L, 5L}) {
    for (int m = 1; m <= 2; ++m) {
      const int k = 4;
      const long order = ipow(p, m).get_si();
      CHECK(CycloElem::zeta_power(p, m, k, order) == CycloElem::zeta_power(p, m, k, 0));
      CHECK(CycloElem::zeta_power(p, m, k, 1) * CycloElem::zeta_power(p, m, k, order - 1) ==
            CycloElem::zeta_power(p, m, k, 0));
      CycloElem sum(p, m, k);
      for (long j = 0; j < p; ++j) sum += CycloElem::zeta_power(p, m, k, j * order / p);
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("cyclo_average orthogonality, exhaustive") {
  for (long p : {3L, 5L}) {
    for (int m = 1; m <= 2; ++m) {
      const int k = m + 2;
      const long order = ipow(p, m).get_si();
      for (long a = 0; a < order; ++a) {
        for (long b = 0; b < order; ++b) {
          std::vector<CycloElem> values;
          for (long j = 0; j < order; ++j) values.push_back(CycloElem::zeta_power(p, m, k, b * j));
          const CycloElem avg = cyclo_average(values, a);
          REQUIRE(avg.precision() == k - m);
          const auto s = avg.as_scalar();
          REQUIRE(s.has_value());
          REQUIRE(s->residue() == (a == b ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("cyclo_average errors") {
  std::vector<CycloElem> values(3, CycloElem::zeta_power(3, 1, 3, 0));
  values[0] = CycloElem::scalar(1, PadicApprox(3, 3, 1L));
  values[1] = CycloElem::scalar(1, PadicApprox(3, 3, 0L));
  values[2] = CycloElem::scalar(1, PadicApprox(3, 3, 0L));
  CHECK_THROWS_AS(cyclo_average(values, 0), std::domain_error);
  std::vector<CycloElem> low(3, CycloElem::zeta_power(3, 1, 1, 0));
  CHECK_THROWS_AS(cyclo_average(low, 0), PrecisionError);
  values.pop_back();
  CHECK_THROWS_AS(cyclo_average(values, 0), std::invalid_argument);
}
