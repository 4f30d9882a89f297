#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pexeq {

/// Equation instance a^x + b^y = c^z with a, b, c > 1 pairwise coprime.
struct Triple {
  mpz_class a, b, c;
};

struct Solution {
  unsigned long x, y, z;
  auto operator<=>(const Solution&) const = default;
};

// all solutions with z <= z_max, by exhaustive scan with exact root tests
std::vector<Solution> count_solutions(const Triple& t, unsigned long z_max);

// z_max that puts c^{z_max} above the square of the largest power involved
unsigned long default_z_max(const Triple& t);

struct CheckLine {
  std::string what;
  bool ok;
};

struct Report {
  std::vector<CheckLine> lines;
  bool ok() const {
    for (auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
};

// the known two-solution triples (three solutions for (3,5,2)), including the
// parametric family (2, 2^k-1, 2^k+1) for k = 2 and 4 <= k <= k_max
std::vector<Triple> exceptional_triples(unsigned long k_max);

// re-verifies every listed identity and the per-triple solution counts
Report verify_exceptional_list(unsigned long k_max);

// recomputes the published extended-order table (incl. the parametric line)
Report order_table();

// finite enumeration behind the coprimality argument: pairs (A, B) with
// A^3 + B^3 a proper power c^z whose z-th power part is compatible with the
// divisor structure never satisfy (A^3+B^3)/(A+B)^2 < 9
Report abp_check();

// congruence/divisibility invariants of the known two-solution triples
Report verify_witness_invariants();

}  // namespace pexeq
