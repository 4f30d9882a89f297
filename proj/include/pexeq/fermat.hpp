#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pexeq/bounds.hpp"
#include "pexeq/gauss.hpp"
#include "pexeq/oracle.hpp"

namespace pexeq {

// c = m^2 + 1 with m = 2^e; beta = m + i generates the split prime above c
long fermat_e(long c);  // e for c in {5, 17, 257, 65537}

/// (aZ, bZ) with aZ^2 + bZ^2 = c^Z, aZ odd, bZ even:
/// aZ = |beta^Z + (-conj beta)^Z| / 2, bZ = |beta^Z - (-conj beta)^Z| / 2.
std::pair<mpz_class, mpz_class> fermat_pair(long c, unsigned long Z);

/// Y' = (e + nu_2(Z)) / nu_2(bZ) as an exact fraction (num, den reduced).
struct YPrime {
  long num, den;
  bool integral() const { return den == 1; }
};
YPrime yprime(long c, unsigned long Z, const mpz_class& bZ);

// E(e, Z) = 2e / gcd(2e, Z - 1)
long ext_order_formula(long e, unsigned long Z);

// c-adic valuation V of aZ^{2e} + 1 (Z even) or bZ^{2e} - 1 (Z odd),
// computed modulo c^K with K raised adaptively
int wieferich_valuation(long c, unsigned long Z);

// max of wieferich_valuation over 1 <= Z <= z_max (OpenMP over Z blocks)
int wieferich_max(long c, unsigned long z_max);
int wieferich_max_serial(long c, unsigned long z_max);

/// divisor witness (d, side) with d | side, jacobi(other/d) = -1,
/// jacobi(c/d) = +1; side is 'a' or 'b'
struct JacobiWitness {
  mpz_class d;
  char side;
};
std::optional<JacobiWitness> jacobi_witness(long c, unsigned long Z);

// the tabulated (c, Z, d, side) rows used by the contradiction step
struct JacobiRow {
  long c;
  unsigned long Z;
  long d;
  char side;
};
const std::vector<JacobiRow>& jacobi_table();

// small-Z table: all (Z, aZ, bZ) for Z <= 3 plus the base family identities
Report zsmall_enumerate(long c);

/// Full verification pipeline for one Fermat prime; concludes that the only
/// extra-solution pair is (2, c-2).
struct FermatPipelineResult {
  Report report;
  FermatBounds bounds;
  int wieferich_v = 0;
};
FermatPipelineResult fermat_pipeline(long c, unsigned long wieferich_zmax = 600000);

}  // namespace pexeq
