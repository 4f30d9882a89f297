#include "pexeq/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pexeq {

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool miller_rabin(u64 n, u64 a) {
  if (n % a == 0) return n == a;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, s++;
  u64 x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; i++) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 x = 2, y = 2, c = 1, d = 1;
  while (true) {
    x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
    c++;
  }
}

void factor_rec(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[n]++;
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic witness set for the 64-bit range
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::map<u64, int> m;
  // strip small primes first; rho handles the rest
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) m[p]++, n /= p;
  }
  if (n > 1) factor_rec(n, m);
  return {m.begin(), m.end()};
}

mpz_class mult_order(const mpz_class& a, const mpz_class& m) {
  if (m <= 0) throw precondition_error("mult_order: modulus must be positive");
  if (m == 1) return 1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw precondition_error("mult_order: base not coprime to modulus");
  mpz_class ar = a % m;
  if (ar < 0) ar += m;

  if (m.fits_ulong_p()) {
    // group-exponent route: ord divides lambda(m)
    u64 mm = m.get_ui();
    auto mf = factor_u64(mm);
    mpz_class lambda = 1;
    for (auto [p, e] : mf) {
      mpz_class lpe;
      if (p == 2) {
        if (e == 1) lpe = 1;
        else if (e == 2) lpe = 2;
        else lpe = mpz_class(1) << (e - 2);
      } else {
        lpe = mpz_class(p) - 1;
        for (int i = 1; i < e; i++) lpe *= p;
      }
      mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), lpe.get_mpz_t());
    }
    mpz_class ord = lambda;
    // peel each prime of lambda while the power stays 1; lambda may exceed
    // 64 bits, so collect its prime set from the contributing pieces instead
    std::set<u64> lam_primes;
    for (auto [p, e] : mf) {
      if (p == 2) {
        if (e >= 2) lam_primes.insert(2);
      } else {
        for (auto [q, f] : factor_u64(p - 1)) lam_primes.insert(q);
        if (e > 1) lam_primes.insert(p);
      }
    }
    for (u64 q : lam_primes) {
      mpz_class qq(q);
      while (mpz_divisible_p(ord.get_mpz_t(), qq.get_mpz_t())) {
        mpz_class cand = ord / qq;
        mpz_class pw;
        mpz_powm(pw.get_mpz_t(), ar.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
        if (pw == 1)
          ord = cand;
        else
          break;
      }
    }
    return ord;
  }

  // incremental fallback for moduli beyond the factorable range
  mpz_class pw = 1, n = 0;
  do {
    pw = pw * ar % m;
    n += 1;
  } while (pw != 1);
  return n;
}

ExtOrder ext_order(const mpz_class& a, const mpz_class& m) {
  if (m < 2) throw precondition_error("ext_order: modulus must be >= 2");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw precondition_error("ext_order: base not coprime to modulus");
  if (m <= 2) return {1, 1};
  mpz_class ord = mult_order(a, m);
  if (mpz_even_p(ord.get_mpz_t())) {
    mpz_class half = ord / 2;
    mpz_class pw;
    mpz_powm(pw.get_mpz_t(), mpz_class(a % m).get_mpz_t(), half.get_mpz_t(), m.get_mpz_t());
    if (pw == m - 1) return {half, -1};
  }
  return {ord, 1};
}

mpz_class ext_order_power(const mpz_class& a, const mpz_class& m, const mpz_class& k) {
  if (k < 1) throw precondition_error("ext_order_power: k must be >= 1");
  mpz_class e = ext_order(a, m).order;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), k.get_mpz_t());
  return e / g;
}

long strip_factor(mpz_class& a, const mpz_class& m) {
  long v = 0;
  mpz_class q, r;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r != 0) break;
    a = q;
    v++;
  }
  return v;
}

long valuation(const mpz_class& m, const mpz_class& a) {
  if (m < 2) throw precondition_error("valuation: base must be >= 2");
  if (a == 0) throw precondition_error("valuation: undefined at 0");
  mpz_class x = abs(a);
  return strip_factor(x, m);
}

long valuation(const mpz_class& p, const mpq_class& a) {
  if (a == 0) throw precondition_error("valuation: undefined at 0");
  mpz_class den = a.get_den();
  if (den == 1) return valuation(p, mpz_class(a.get_num()));
  if (p < 2 || !p.fits_ulong_p() || !is_prime_u64(p.get_ui()))
    throw precondition_error("valuation: rational arguments require a prime base");
  return valuation(p, mpz_class(a.get_num())) - valuation(p, den);
}

long lte_valuation(const mpz_class& p, const mpz_class& u, const mpz_class& v, const mpz_class& n) {
  if (n < 1) throw precondition_error("lte: N must be >= 1");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  if (g != 1) throw precondition_error("lte: U, V must be coprime");
  if (u == v) throw precondition_error("lte: U^N - V^N vanishes");
  mpz_class d = u - v;
  if (p == 2) {
    if (d % 4 != 0) throw precondition_error("lte: p=2 requires U == V (mod 4)");
  } else {
    if (!p.fits_ulong_p() || !is_prime_u64(p.get_ui()))
      throw precondition_error("lte: base must be prime");
    if (d % p != 0) throw precondition_error("lte: requires U == V (mod p)");
  }
  return valuation(p, d) + (n % p == 0 ? valuation(p, n) : 0);
}

mpz_class s_part(const mpz_class& a, const std::vector<mpz_class>& s) {
  if (a == 0) throw precondition_error("s_part: undefined at 0");
  mpz_class out = 1;
  mpz_class x = abs(a);
  for (const auto& p : s) {
    long v = valuation(p, x);
    for (long i = 0; i < v; i++) out *= p;
  }
  return out;
}

int jacobi(const mpz_class& a, const mpz_class& d) {
  if (d < 1 || mpz_even_p(d.get_mpz_t()))
    throw precondition_error("jacobi: denominator must be odd and positive");
  return mpz_jacobi(a.get_mpz_t(), d.get_mpz_t());
}

std::optional<mpz_class> crt(const std::vector<std::pair<mpz_class, mpz_class>>& congruences) {
  if (congruences.empty()) throw precondition_error("crt: need at least one congruence");
  mpz_class r = 0, m = 1;
  for (const auto& [ri, mi] : congruences) {
    if (mi < 1) throw precondition_error("crt: moduli must be >= 1");
    // solve r + m*t == ri (mod mi)
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
    mpz_class diff = ri - r;
    if (diff % g != 0) return std::nullopt;
    mpz_class lcm = m / g * mi;
    mpz_class step = (diff / g) * s % (mi / g);
    r += m * step;
    m = lcm;
    r %= m;
    if (r < 0) r += m;
  }
  return r;
}

mpz_class iroot(const mpz_class& a, unsigned long x) {
  mpz_class r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), x);
  return r;
}

std::optional<std::pair<mpz_class, unsigned long>> is_perfect_power(const mpz_class& a) {
  if (a < 1) throw precondition_error("is_perfect_power: argument must be >= 1");
  if (a == 1) return {{mpz_class(1), 2ul}};
  mpz_class base = a;
  unsigned long k = 1;
  // peel prime exponents until the base is powerfree
  while (true) {
    unsigned long maxe = mpz_sizeinbase(base.get_mpz_t(), 2);
    bool peeled = false;
    for (unsigned long q = 2; q <= maxe; q = (q == 2 ? 3 : q + 2)) {
      if (!is_prime_u64(q)) continue;
      mpz_class r = iroot(base, q);
      mpz_class back;
      mpz_pow_ui(back.get_mpz_t(), r.get_mpz_t(), q);
      if (back == base) {
        base = r;
        k *= q;
        peeled = true;
        break;
      }
    }
    if (!peeled) break;
  }
  if (k < 2) return std::nullopt;
  return {{base, k}};
}

std::pair<mpz_class, mpz_class> reduce_triple(const mpz_class& a, const mpz_class& b,
                                              const mpz_class& c, const mpz_class& d) {
  if (!(a > 1 && b > 1 && c > 1)) throw precondition_error("reduce_triple: a, b, c must exceed 1");
  if (d <= 2 || c % d != 0) throw precondition_error("reduce_triple: need d | c with d > 2");
  mpz_class g1, g2, g3;
  mpz_gcd(g1.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g2.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  mpz_gcd(g3.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
  if (g1 != 1 || g2 != 1 || g3 != 1)
    throw precondition_error("reduce_triple: a, b, c must be pairwise coprime");
  mpz_class ea = ext_order(a, d).order;
  mpz_class eb = ext_order(b, d).order;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
  mpz_class xa = ea / g, xb = eb / g, A, B;
  mpz_pow_ui(A.get_mpz_t(), a.get_mpz_t(), xa.get_ui());
  mpz_pow_ui(B.get_mpz_t(), b.get_mpz_t(), xb.get_ui());
  return {A, B};
}

std::vector<mpz_class> bounded_divisors_of_power(const mpz_class& base, unsigned long exp,
                                                 const mpz_class& limit) {
  // factor the base, multiply exponents by exp, walk divisors below limit
  if (!base.fits_ulong_p()) throw precondition_error("bounded_divisors_of_power: base too large");
  auto f = factor_u64(base.get_ui());
  std::vector<mpz_class> divs{1};
  for (auto [p, e] : f) {
    std::vector<mpz_class> next;
    for (const auto& d : divs) {
      mpz_class cur = d;
      for (unsigned long i = 0; i <= (unsigned long)e * exp; i++) {
        if (cur >= limit) break;
        next.push_back(cur);
        cur *= p;
      }
    }
    divs = std::move(next);
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::remove_if(divs.begin(), divs.end(),
                            [&](const mpz_class& d) { return d >= limit; }),
             divs.end());
  return divs;
}

}  // namespace pexeq
