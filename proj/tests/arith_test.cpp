#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "pexeq/arith.hpp"

using namespace pexeq;

namespace {
mpz_class zpow(long b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
  return r;
}
}  // namespace

TEST_CASE("ext_order basics") {
  auto e = ext_order(2, 11);
  CHECK(e.order == 5);
  CHECK(e.sign == -1);  // 2^5 = 32 = -1 (mod 11)
  e = ext_order(1, 97);
  CHECK(e.order == 1);
  CHECK(e.sign == 1);
  e = ext_order(2, 35);
  CHECK(e.order == 12);
  CHECK(e.sign == 1);  // 2^12 = 4096 = 1 (mod 35)
  CHECK(ext_order(7, 2).order == 1);
  CHECK_THROWS_AS(ext_order(15, 35), precondition_error);
}

TEST_CASE("ext_order two computation paths agree") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; i++) {
    long m = 3 + (long)(rng() % 4000);
    long a = 2 + (long)(rng() % (m - 2));
    if (std::gcd(a, m) != 1) continue;
    auto e = ext_order(a, m);
    // incremental reference
    mpz_class pw = 1, mm(m);
    long n = 0;
    int sign = 0;
    do {
      pw = pw * a % mm;
      n++;
      if (pw == 1) sign = 1;
      if (pw == mm - 1) sign = -1;
    } while (sign == 0);
    CHECK(e.order == n);
    CHECK(e.sign == sign);
  }
}

TEST_CASE("extended order laws on random inputs") {
  std::mt19937_64 rng(11);
  int tested = 0;
  for (int i = 0; tested < 1000; i++) {
    long m = 3 + (long)(rng() % 10000);
    long a = 2 + (long)(rng() % (m - 2));
    if (std::gcd(a, m) != 1) continue;
    tested++;
    auto e = ext_order(a, m);
    mpz_class ord = mult_order(a, m);
    if (e.sign == -1)
      CHECK(ord == 2 * e.order);
    else
      CHECK(ord == e.order);
    long k = 1 + (long)(rng() % 50);
    mpz_class g;
    mpz_class kk(k);
    mpz_gcd(g.get_mpz_t(), e.order.get_mpz_t(), kk.get_mpz_t());
    CHECK(ext_order_power(a, m, k) == e.order / g);
    // and it matches the order of a^k directly
    mpz_class ak;
    mpz_powm(ak.get_mpz_t(), mpz_class(a).get_mpz_t(), kk.get_mpz_t(), mpz_class(m).get_mpz_t());
    if (ak != 0) CHECK(ext_order_power(a, m, k) == ext_order(ak, m).order);
  }
}

TEST_CASE("ext_order_power examples") {
  CHECK(ext_order_power(2, 13, 2) == 3);
  CHECK(ext_order_power(3, 13, 2) == 3);
  CHECK(ext_order_power(2, 13, 1) == ext_order(2, 13).order);
}

TEST_CASE("valuation") {
  CHECK(valuation(12, mpz_class(48)) == 1);
  CHECK(valuation(5, mpz_class(16775)) == 2);
  CHECK(valuation(7, mpz_class(1)) == 0);
  CHECK_THROWS_AS(valuation(5, mpz_class(0)), precondition_error);
  CHECK(valuation(5, mpq_class(3, 25)) == -2);
  CHECK_THROWS_AS(valuation(12, mpq_class(1, 5)), precondition_error);
}

TEST_CASE("lifting the exponent") {
  CHECK(lte_valuation(3, 5, 2, 6) == 2);   // 5^6 - 2^6 = 15561 = 3^2 * 1729
  CHECK(lte_valuation(2, 5, 1, 4) == 4);   // 624 = 2^4 * 39
  CHECK_THROWS_AS(lte_valuation(3, 5, 5, 4), precondition_error);
  CHECK_THROWS_AS(lte_valuation(2, 7, 1, 3), precondition_error);  // 7 != 1 (mod 4)
  CHECK_THROWS_AS(lte_valuation(5, 7, 3, 2), precondition_error);  // 7 != 3 (mod 5)
}

TEST_CASE("LTE equals the direct valuation on random admissible inputs") {
  std::mt19937_64 rng(13);
  const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
  int tested = 0;
  while (tested < 10000) {
    long p = primes[rng() % 9];
    mpz_class u = 2 + mpz_class((unsigned long)(rng() % 5000));
    long mod = p == 2 ? 4 : p;
    mpz_class v = u - mod * (long)(1 + rng() % 20);
    if (v == 0 || u == v) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    if (g != 1) continue;
    // keep u^n within 4096 bits
    unsigned long n = 1 + (unsigned long)(rng() % 100);
    if (mpz_sizeinbase(u.get_mpz_t(), 2) * n > 4096) continue;
    tested++;
    mpz_class un, vn;
    mpz_pow_ui(un.get_mpz_t(), u.get_mpz_t(), n);
    mpz_pow_ui(vn.get_mpz_t(), v.get_mpz_t(), n);
    CHECK(lte_valuation(p, u, v, n) == valuation(p, mpz_class(un - vn)));
  }
}

TEST_CASE("s_part") {
  CHECK(s_part(259, {mpz_class(7)}) == 7);
  CHECK(s_part(259, {}) == 1);
  CHECK(s_part(48, {mpz_class(2), mpz_class(3)}) == 48);
  CHECK(s_part(-48, {mpz_class(2)}) == 16);
}

TEST_CASE("jacobi") {
  CHECK(jacobi(161, 15) == -1);
  CHECK(jacobi(17, 15) == 1);
  CHECK(jacobi(123456, 1) == 1);
  CHECK(jacobi(15, 45) == 0);
  CHECK_THROWS_AS(jacobi(3, 8), precondition_error);
  CHECK_THROWS_AS(jacobi(3, -5), precondition_error);
}

TEST_CASE("jacobi is completely multiplicative in each argument") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; i++) {
    mpz_class a = (unsigned long)(rng() % 1000) + 1;
    mpz_class b = (unsigned long)(rng() % 1000) + 1;
    mpz_class d = 2 * (unsigned long)(rng() % 500) + 1;
    mpz_class e = 2 * (unsigned long)(rng() % 500) + 1;
    CHECK(jacobi(a * b, d) == jacobi(a, d) * jacobi(b, d));
    CHECK(jacobi(a, d * e) == jacobi(a, d) * jacobi(a, e));
  }
}

TEST_CASE("crt") {
  auto r = crt({{1, 3}, {3, 4}});
  REQUIRE(r.has_value());
  CHECK(*r == 7);
  CHECK_FALSE(crt({{0, 2}, {1, 4}}).has_value());
  auto one = crt({{5, 1}});
  REQUIRE(one.has_value());
  CHECK(*one == 0);
}

TEST_CASE("crt result is minimal and satisfies every congruence") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; i++) {
    std::vector<std::pair<mpz_class, mpz_class>> cs;
    mpz_class lcm = 1;
    for (int j = 0; j < 3; j++) {
      mpz_class m = 1 + (unsigned long)(rng() % 60);
      mpz_class rr = (unsigned long)(rng() % 60);
      cs.push_back({rr, m});
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m.get_mpz_t());
    }
    auto r = crt(cs);
    if (!r) continue;
    CHECK(*r >= 0);
    CHECK(*r < lcm);
    for (auto& [rr, m] : cs) CHECK((*r - rr) % m == 0);
  }
}

TEST_CASE("perfect powers") {
  auto p = is_perfect_power(8);
  REQUIRE(p.has_value());
  CHECK(p->first == 2);
  CHECK(p->second == 3);
  CHECK_FALSE(is_perfect_power(2200).has_value());
  CHECK_FALSE(is_perfect_power(259).has_value());
  auto one = is_perfect_power(1);
  REQUIRE(one.has_value());
  CHECK(one->second == 2);
  auto p64 = is_perfect_power(64);  // maximal exponent: 2^6, not 8^2
  REQUIRE(p64.has_value());
  CHECK(p64->first == 2);
  CHECK(p64->second == 6);
  auto big = is_perfect_power(zpow(12, 30));
  REQUIRE(big.has_value());
  CHECK(big->first == 12);
  CHECK(big->second == 30);
}

TEST_CASE("reduce_triple") {
  auto [A, B] = reduce_triple(3, 10, 13, 13);
  CHECK(A == 3);
  CHECK(B == 10);
  auto [A2, B2] = reduce_triple(2, 3, 13, 13);
  CHECK(A2 == 4);  // e_13(2) = 6, e_13(3) = 3, g = 3
  CHECK(B2 == 3);
  // resulting extended orders both equal g
  CHECK(ext_order(A2, 13).order == 3);
  CHECK(ext_order(B2, 13).order == 3);
  CHECK_THROWS_AS(reduce_triple(3, 10, 13, 2), precondition_error);
  CHECK_THROWS_AS(reduce_triple(3, 10, 13, 5), precondition_error);
}

TEST_CASE("factor_u64 handles semiprimes and powers") {
  auto f = factor_u64(600851475143ull);
  mpz_class back = 1;
  for (auto [p, e] : f)
    for (int i = 0; i < e; i++) back *= mpz_class((unsigned long)p);
  CHECK(back == mpz_class("600851475143"));
  CHECK(is_prime_u64(65537));
  CHECK_FALSE(is_prime_u64(65536));
}

TEST_CASE("bounded divisors of a power") {
  auto d = bounded_divisors_of_power(6, 3, 50);  // divisors of 216 below 50
  std::vector<mpz_class> expect = {1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 27, 36};
  CHECK(d == expect);
}
