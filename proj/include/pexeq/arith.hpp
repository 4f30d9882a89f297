#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pexeq {

// thrown on violated operation preconditions; never silently computed around
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Extended multiplicative order: least E >= 1 with A^E == +-1 (mod M),
/// together with the realized sign.
struct ExtOrder {
  mpz_class order;  // E
  int sign;         // epsilon_0 in {+1, -1}
};

// ext_order(A, M): requires gcd(A, M) = 1. For M <= 2 returns {1, +1}.
ExtOrder ext_order(const mpz_class& a, const mpz_class& m);

// multiplicative order of a mod m (gcd(a, m) = 1, m >= 1)
mpz_class mult_order(const mpz_class& a, const mpz_class& m);

// e_M(A^k) = e_M(A) / gcd(e_M(A), k)
mpz_class ext_order_power(const mpz_class& a, const mpz_class& m, const mpz_class& k);

// M-adic valuation of a nonzero integer, M >= 2 (not necessarily prime)
long valuation(const mpz_class& m, const mpz_class& a);
// p-adic valuation of a nonzero rational; p must be prime
long valuation(const mpz_class& p, const mpq_class& a);

// nu_p(U^N - V^N) via lifting the exponent. Hypotheses checked:
// gcd(U,V)=1, U == V mod p (odd p) or mod 4 (p = 2), and U != V.
long lte_valuation(const mpz_class& p, const mpz_class& u, const mpz_class& v, const mpz_class& n);

// S-part: product over p in S of p^{nu_p(a)}; s_part(a, {}) = 1
mpz_class s_part(const mpz_class& a, const std::vector<mpz_class>& s);

// Jacobi symbol (a/d), d odd positive
int jacobi(const mpz_class& a, const mpz_class& d);

// least x >= 0 with x == r_i (mod m_i) for all i; nullopt when inconsistent
std::optional<mpz_class> crt(const std::vector<std::pair<mpz_class, mpz_class>>& congruences);

// maximal-exponent perfect power representation: a = r^k with k >= 2 maximal.
// a = 1 reports (1, 2). nullopt when a is not a perfect power.
std::optional<std::pair<mpz_class, unsigned long>> is_perfect_power(const mpz_class& a);

// (A, B) = (a^{e_d(a)/g}, b^{e_d(b)/g}) with g = gcd(e_d(a), e_d(b)).
std::pair<mpz_class, mpz_class> reduce_triple(const mpz_class& a, const mpz_class& b,
                                              const mpz_class& c, const mpz_class& d);

// --- small helpers shared across modules ---

// prime factorization of n < 2^64 (trial division + Pollard rho), sorted
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);
bool is_prime_u64(uint64_t n);

// all divisors of base^exp that are < limit, ascending
std::vector<mpz_class> bounded_divisors_of_power(const mpz_class& base, unsigned long exp,
                                                 const mpz_class& limit);

// exact floor of the x-th root
mpz_class iroot(const mpz_class& a, unsigned long x);

// largest k with m^k dividing a (a != 0), i.e. valuation(), exposed on raw mpz
long strip_factor(mpz_class& a, const mpz_class& m);

}  // namespace pexeq
