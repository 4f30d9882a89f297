#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "pexeq/real.hpp"

namespace pexeq {

// Explicit two-logarithm bound evaluators. Every result is an interval whose
// upper endpoint is a certified upper bound for the exact value; prune/keep
// decisions elsewhere must use .hi (or certainly_* comparisons).

// c' = 4 when c = 2, else c
mpz_class c_prime(const mpz_class& c);
// C = c, or c/2 when c > 2 and c == 2 (mod 4)
mpz_class big_c(const mpz_class& c);
// kappa_c = 1 when c == 2 (mod 4), else log c / log(c-1)
Iv kappa_c(const mpz_class& c);

/// p-adic two-log query: bound for nu_M(alpha1^b1 - alpha2^b2).
/// H_j must dominate max{h(alpha_j), log M}; only the log M part is re-checked.
struct TwoLogQuery {
  mpz_class M;
  mpz_class g;
  Iv H1, H2;
  mpz_class b1, b2;
};
Iv padic_twolog_bound(const TwoLogQuery& q);

// valid K_c with T = z log^2 c / (log a log b) * ... forced below it;
// for c in {2,3,5,6,7,10,14} solves the two-branch case analysis, otherwise
// returns 857.6 kappa_c log^2 c / log^2 C after checking the second branch
// is infeasible.
Iv kc_bound(const mpz_class& c);
long kc_table(long c);  // published table entry for the seven small c, else 0

/// Inputs for the strong refinement of a Z upper bound at fixed
/// (c, z, maxexp, t); ell = lcm(c', C^{z-t}).
struct StrongInput {
  long c = 0;
  long z = 0;
  long calX = 1;
  long t = 0;
  mpz_class ell;
  int64_t Zu = 0;
};

// single (k, L) attempt, k = k0/15; nullopt when the conditions fail or any
// check is uncertain under outward rounding
std::optional<int64_t> strong_refine(const StrongInput& in, long k0, long L);

// best-of-grid refinement, iterated three times; never exceeds in.Zu
int64_t strong_search(const StrongInput& in);

/// Z bound for the x = y = 1 system; `exceptional` marks the finitely many
/// (c, z) pairs whose derivation falls back on the classical solution list.
struct X1Y1Bound {
  int64_t z_bound;
  bool exceptional;
};
X1Y1Bound x1y1_zbound(long c, long z);

/// Number-field p-adic two-log query (prime ideal over p, inertia f_pi).
struct NfBoundQuery {
  long D = 2;
  long p = 0;
  long f_pi = 1;
  mpz_class g;
  Iv H1, H2;
  mpz_class b1, b2;
};
Iv nf_padic_twolog_bound(const NfBoundQuery& q);

/// Complex two-log query for |alpha| = 1, alpha not a root of unity:
/// magnitude of the lower bound for log|alpha^k - 1|.
struct ComplexBoundQuery {
  long D = 2;
  Iv height;
  Iv log_abs;
  int64_t k = 1;
};
Iv complex_twolog_bound(const ComplexBoundQuery& q);

// least Z* such that every Z > Z* violates
//   Z < 9/(1-2/chi) (1+22pi/log c) (max{log Z + 4.3, 17})^2 + 1
int64_t complex_zbound(long c, const Iv& chi);

/// Computed bound tables for a Fermat prime c (17, 257 or 65537).
struct FermatBounds {
  long c = 0;
  long e = 0;
  int64_t min_cap_lemma = 0;         // min{z,Z} cap from the divisor gap alone
  int64_t min_cap_joint = 0;         // sharpened with the Wieferich cap v_max
  int64_t zcap_even = 0;             // Z cap for z <= Z, Z even
  std::optional<int64_t> zcap_odd;   // Z cap for z <= Z, Z odd
  int64_t zcap_Z_le_z = 0;           // Z cap for Z <= z
  int64_t global_Z_cap = 0;          // overall Z cap
};
FermatBounds fermat_bound_suite(long c, int v_max);

}  // namespace pexeq
