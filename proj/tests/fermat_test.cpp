#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "pexeq/arith.hpp"
#include "pexeq/fermat.hpp"
#include "pexeq/gauss.hpp"

using namespace pexeq;

namespace {
mpz_class zpow(long b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
  return r;
}
}  // namespace

TEST_CASE("gauss_pow exact") {
  GaussInt b{4, 1};
  auto sq = gauss_pow(b, 2);
  CHECK(sq.re == 15);
  CHECK(sq.im == 8);
  auto id = gauss_pow(b, 0);
  CHECK(id.re == 1);
  CHECK(id.im == 0);
  auto p4 = gauss_pow(b, 4);
  CHECK(p4.re == 161);
  CHECK(p4.im == 240);
}

TEST_CASE("gauss_pow modular agrees with exact") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; i++) {
    unsigned long Z = 1 + rng() % 60;
    int K = 1 + (int)(rng() % 6);
    mpz_class mod = zpow(17, K);
    GaussInt b{4, 1};
    auto exact = gauss_reduce(gauss_pow(b, Z), mod);
    auto modular = gauss_pow(b, Z, mod);
    CHECK(exact == modular);
  }
}

TEST_CASE("fermat_pair known values") {
  auto [a2, b2] = fermat_pair(17, 2);
  CHECK(a2 == 15);
  CHECK(b2 == 8);
  auto [a3, b3] = fermat_pair(17, 3);
  CHECK(a3 == 47);
  CHECK(b3 == 52);
  auto [a53, b53] = fermat_pair(5, 3);
  CHECK(a53 == 11);
  CHECK(b53 == 2);
  auto [a257, b257] = fermat_pair(257, 3);
  CHECK(a257 == 767);
  CHECK(b257 == 4048);
}

TEST_CASE("pair identity and parity for all Z up to 1000") {
  for (long c : {5L, 17L, 257L, 65537L}) {
    for (unsigned long Z = 1; Z <= 1000; Z++) {
      auto [aZ, bZ] = fermat_pair(c, Z);  // constructor asserts the identity
      CHECK(aZ % 2 == 1);
      CHECK(bZ % 2 == 0);
    }
  }
}

TEST_CASE("power-residue congruence of the real/imaginary parts") {
  for (long c : {5L, 17L, 257L, 65537L}) {
    long m = 1L << fermat_e(c);
    GaussInt g{1, 0};
    GaussInt beta{m, 1};
    mpz_class mod(c);
    mpz_class pw = 1;
    for (unsigned long Z = 1; Z <= 1000; Z++) {
      g = gauss_reduce(gauss_mul(g, beta), mod);
      pw = pw * 2 % mod;  // 2^Z
      mpz_class half = pw * ((c + 1) / 2) % mod;  // 2^{Z-1} mod c
      mpz_class v = Z % 2 == 0 ? g.re : g.im;
      bool pm = v == half || v == (mod - half) % mod;
      CHECK(pm);
    }
  }
}

TEST_CASE("yprime") {
  CHECK(yprime(17, 4, 240).num == 1);
  CHECK(yprime(17, 4, 240).den == 1);
  CHECK(yprime(17, 2, 8).integral());
  CHECK(yprime(257, 2, 32).integral());
}

TEST_CASE("order formula") {
  CHECK(ext_order_formula(2, 4) == 4);
  CHECK(ext_order_formula(2, 1) == 1);
  CHECK(ext_order_formula(8, 5) == 4);
  // cross-check against the direct extended order of the congruent side,
  // which is aZ for both parities (|Re| even Z, |Im| odd Z)
  for (long c : {17L, 257L}) {
    long e = fermat_e(c);
    for (unsigned long Z = 2; Z <= 1000; Z++) {
      auto [aZ, bZ] = fermat_pair(c, Z);
      CHECK(ext_order(aZ % c, c).order == ext_order_formula(e, Z));
    }
  }
}

TEST_CASE("no even-power obstruction in the pair values") {
  for (long c : {17L, 257L}) {
    for (unsigned long Z = 4; Z <= 1000; Z++) {
      auto [aZ, bZ] = fermat_pair(c, Z);
      auto pa = is_perfect_power(aZ);
      // odd side never a square-or-higher even power
      if (pa) CHECK(pa->second % 2 == 1);
    }
  }
}

TEST_CASE("wieferich valuation examples") {
  CHECK(wieferich_valuation(17, 4) == 1);
  CHECK(wieferich_valuation(17, 1) == 1);
  // serial and parallel scans agree
  CHECK(wieferich_max_serial(17, 5000) == wieferich_max(17, 5000));
  CHECK(wieferich_max_serial(257, 3000) == wieferich_max(257, 3000));
}

TEST_CASE("jacobi witnesses: all published rows") {
  for (auto& row : jacobi_table()) {
    auto w = jacobi_witness(row.c, row.Z);
    REQUIRE(w.has_value());
    CHECK(w->d == row.d);
    CHECK(w->side == row.side);
  }
}

TEST_CASE("zsmall tables") {
  for (long c : {5L, 17L, 257L, 65537L}) {
    Report r = zsmall_enumerate(c);
    for (auto& l : r.lines) {
      INFO(l.what);
      CHECK(l.ok);
    }
  }
}

TEST_CASE("pipeline verdict for c = 5 (order exclusion)") {
  auto res = fermat_pipeline(5);
  CHECK(res.report.ok());
}
