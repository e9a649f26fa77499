#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <fstream>

#include "json.hpp"
#include "padicmf/qexp.hpp"

using namespace padicmf;

namespace {

// tau(0..N) from the Python-generated fixture.
std::vector<mpz_class> tau_fixture() {
  std::ifstream in(PADICMF_TEST_DATA "/delta_1000.json");
  const auto doc = nlohmann::json::parse(in);
  std::vector<mpz_class> tau{0};
  for (const auto& c : doc.at("coeffs")) tau.emplace_back(c.get<std::string>());
  return tau;
}

QExpansion random_expansion(gmp_randclass& rng, long p, int k, long N) {
  const mpz_class mod = ipow(p, k);
  std::vector<mpz_class> c(static_cast<size_t>(N + 1));
  for (long n = 1; n <= N; ++n) c[static_cast<size_t>(n)] = rng.get_z_range(mod);
  return QExpansion(p, k, std::move(c));
}

QExpansion from_list(long p, int k, std::vector<long> a) {
  std::vector<mpz_class> c{0};
  for (long x : a) c.emplace_back(x);
  return QExpansion(p, k, std::move(c));
}

}  // namespace

TEST_CASE("QExpansion basics") {
  CHECK_THROWS_AS(QExpansion(5, 2, {1, 2}), std::invalid_argument);
  CHECK_NOTHROW(QExpansion(5, 2, {25, 2}));
  const QExpansion f = from_list(5, 2, {1, 2, 3, 4});
  CHECK(f.truncation() == 4);
  CHECK(f.dilated(2).residue(4) == 2);
  CHECK(f.dilated(2).residue(3) == 0);
  CHECK(f.truncated(2).truncation() == 2);
  CHECK((f - f).is_zero());
  CHECK(f.reduced(1).residue(3) == 3);
  CHECK(f.scaled(PadicApprox(5, 1, 2L)).precision() == 1);
}

TEST_CASE("Delta coefficients") {
  const auto tau = tau_fixture();
  const auto mine = delta_coefficients(1000);
  REQUIRE(mine.size() == tau.size());
  CHECK(mine == tau);
  CHECK(mine[1] == 1);
  CHECK(mine[2] == -24);
  CHECK(mine[3] == 252);
  CHECK(mine[6] == -6048);
  const QExpansion d = eta_delta(11, 5, 20);
  CHECK(d.coeff(11).residue() == mpz_class(534612) % ipow(11, 5));
}

TEST_CASE("Hecke operators on Delta") {
  const auto tau = tau_fixture();
  const long p = 1000003;
  const QExpansion delta(p, 3, std::vector<mpz_class>(tau.begin(), tau.begin() + 401));
  const QExpansion u = hecke_U(2, delta);
  CHECK(u.truncation() == 200);
  CHECK(u.coeff(1).balanced() == -24);
  CHECK(u.coeff(3).balanced() == -6048);

  const PadicApprox one(p, 3, 1L);
  const QExpansion t = hecke_T(2, delta, 12, one);
  CHECK(t == delta.truncated(200).scaled(PadicApprox(p, 3, -24L)));
  // tau(2n) + 2^11 tau(n/2) = tau(2) tau(n), straight from the fixture
  for (long n = 1; n <= 200; ++n) {
    mpz_class lhs = tau[static_cast<size_t>(2 * n)];
    if (n % 2 == 0) lhs += 2048 * tau[static_cast<size_t>(n / 2)];
    REQUIRE(lhs == -24 * tau[static_cast<size_t>(n)]);
  }
  const QExpansion t3 = hecke_T(3, delta, 12, one);
  CHECK(t3 == delta.truncated(133).scaled(PadicApprox(p, 3, 252L)));
  CHECK(hecke_S(2, delta, 12, one) == delta.scaled(PadicApprox(p, 3, 2048L)));
  CHECK(hecke_S_scalar(2, p, 3, 12, one).residue() == 2048);

  CHECK(hecke_U(5, QExpansion::zero(7, 2, 50)).is_zero());
  CHECK_THROWS_AS(hecke_U(4, delta), std::invalid_argument);
  CHECK_THROWS_AS(hecke_T(6, delta, 12, one), std::invalid_argument);
}

TEST_CASE("T_l commute on random expansions") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(2);
  const long p = 5;
  const int k = 3;
  for (int i = 0; i < 20; ++i) {
    const QExpansion f = random_expansion(rng, p, k, 300);
    const PadicApprox c2(p, k, 1L), c3(p, k, mpz_class(rng.get_z_range(ipow(p, k))) * 5 + 1);
    const QExpansion a = hecke_T(3, hecke_T(2, f, 4, c2), 4, c3);
    const QExpansion b = hecke_T(2, hecke_T(3, f, 4, c3), 4, c2);
    REQUIRE(a.truncated(50) == b.truncated(50));
  }
}

TEST_CASE("theta") {
  CHECK(theta(from_list(7, 2, {1})) == from_list(7, 2, {1}));
  const QExpansion d = eta_delta(1000003, 2, 10);
  CHECK(theta(d).coeff(2).balanced() == -48);
  const QExpansion t = eta_delta(5, 4, 100);
  QExpansion th = t;
  for (int i = 0; i < 3; ++i) th = theta(th);
  for (long n = 5; n <= 100; n += 5) REQUIRE(th.coeff(n).valuation() >= 3);

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(9);
  for (long p : {2L, 3L, 5L}) {
    const QExpansion f = random_expansion(rng, p, 4, 200);
    REQUIRE(hecke_U(p, theta(f)) == theta(hecke_U(p, f)).scaled(PadicApprox(p, 4, p)));
  }
}

TEST_CASE("twist") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(4);
  const long p = 5;
  const int k = 3;
  const QExpansion f = random_expansion(rng, p, k, 100);
  CHECK(twist(f, LocConstFn::constant(p, k, 1)) == f);

  const LocConstFn units = LocConstFn::from_function(p, k, 1, Domain::Zp, [](const mpz_class& x) {
    return mpz_class(x % 5 == 0 ? 0 : 1);
  });
  const QExpansion killed = twist(f, units);
  for (long n = 1; n <= 100; ++n) REQUIRE(killed.coeff(n) == (n % 5 == 0 ? PadicApprox::zero(p, k) : f.coeff(n)));

  const SmoothChar omega = SmoothChar::teichmuller_power(p, k, 1, PadicApprox::one(p, k));
  const LocConstFn omega_fn = LocConstFn::from_function(p, k, 1, Domain::ZpUnits, [&](const mpz_class& u) {
    return omega.on_unit(u).residue();
  });
  const QExpansion tw = twist(f, omega_fn);
  for (long n = 1; n <= 100; ++n) {
    const PadicApprox expect =
        n % 5 == 0 ? PadicApprox::zero(p, k) : teichmuller(PadicApprox(p, k, n)).teich * f.coeff(n);
    REQUIRE(tw.coeff(n) == expect);
  }

  for (int i = 0; i < 20; ++i) {
    const auto g1 = LocConstFn::from_function(p, k, 2, Domain::Zp, [&](const mpz_class&) { return mpz_class(rng.get_z_range(125)); });
    const auto g2 = LocConstFn::from_function(p, k, 1, Domain::Zp, [&](const mpz_class&) { return mpz_class(rng.get_z_range(125)); });
    REQUIRE(twist(twist(f, g1), g2) == twist(f, g1 * g2));
  }
}

TEST_CASE("circle action") {
  const QExpansion f = from_list(3, 3, {1, 1});
  const CycloQExpansion g = circle_act(1, 1, f);
  CHECK(g.coeff(1) == CycloElem::zeta_power(3, 1, 3, 1));
  CHECK(g.coeff(2) == CycloElem::zeta_power(3, 1, 3, 2));
  CHECK(circle_act(0, 2, f) == CycloQExpansion::lift(f, 2));

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(8);
  for (long p : {3L, 5L}) {
    const QExpansion h = random_expansion(rng, p, 4, 80);
    const long order = p * p;
    for (long j = 0; j < order; j += 3) {
      for (long j2 = 1; j2 < order; j2 += 4) {
        REQUIRE(circle_act(j2, circle_act(j, 2, h)) == circle_act(j + j2, 2, h));
      }
    }
    const QExpansion avg0 = as_plain(circle_average(h, 1, 0));
    CHECK(avg0.precision() == 3);
    for (long n = 1; n <= 80; ++n) REQUIRE(avg0.coeff(n) == (n % p == 0 ? h.coeff(n).reduced(3) : PadicApprox::zero(p, 3)));
  }
}

TEST_CASE("Fourier duality: circle average = indicator twist") {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(12);
  for (long p : {3L, 5L}) {
    for (int m = 1; m <= 2; ++m) {
      const int k = m + 2;
      const QExpansion f = random_expansion(rng, p, k, 120);
      const auto all = circle_averages(f, m);
      for (long a = 0; a < static_cast<long>(all.size()); ++a) {
        const QExpansion rhs = twist(f, indicator(p, k, a, m)).reduced(k - m);
        REQUIRE(as_plain(all[static_cast<size_t>(a)]) == rhs);
        if (a < 2) REQUIRE(circle_average(f, m, a) == all[static_cast<size_t>(a)]);
      }
    }
  }
}

TEST_CASE("kir_total") {
  const QExpansion d = eta_delta(1000003, 2, 100);
  const KirTotal kir = kir_total(d);
  CHECK(kir.at(6).balanced() == -6048);
  CHECK_THROWS_AS(kir.at(0), std::out_of_range);
  CHECK_THROWS_AS(kir.at(101), std::out_of_range);

  const QExpansion e = eta_delta(3, 4, 300);
  const KirTotal base = kir_total(e), up = kir_total(hecke_U(3, e)), th = kir_total(theta(e));
  for (long n = 1; n <= up.window(); ++n) REQUIRE(up.at(n) == base.at(3 * n));
  for (long n = 1; n <= th.window(); ++n) REQUIRE(th.at(n) == base.at(n) * n);
  CHECK(kir_total(e).at_shell(2, 2) == base.at(18));
}

TEST_CASE("double coset identity") {
  for (long p : {3L, 5L, 7L}) {
    const DoubleCosetResult r = verify_double_coset(p, eta_delta(p, 4, 100));
    CHECK(r.ok);
    CHECK(r.window == 100 / p);
    CHECK(verify_double_coset(p, from_list(p, 3, {1})).ok);
    CHECK(verify_double_coset(p, QExpansion::zero(p, 3, 30)).ok);
  }
  CHECK_THROWS_AS(verify_double_coset(3, eta_delta(3, 1, 30)), PrecisionError);
}

TEST_CASE("qexp_csv") {
  const std::string csv = qexp_csv(eta_delta(1000003, 3, 10));
  CHECK(csv.rfind("n,a_n\n", 0) == 0);
  CHECK(csv.find("\n6,-6048\n") != std::string::npos);
  CHECK(qexp_csv(QExpansion::zero(5, 2, 0)) == "n,a_n\n");
}
