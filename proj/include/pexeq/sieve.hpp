#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pexeq/bounds.hpp"

namespace pexeq {

enum class Branch { BigX, XEq1 };
enum class Variant { LargeC, SmallC };

/// One feasible search cell. Large-c rows carry a c-range [11, c1]; small-c
/// rows fix c and (after step 1/a) the exponent t with Delta' = C^t.
struct PairRow {
  long c = 0;      // 0 for large-c rows
  long z = 0;
  long calX = 1;   // max{x, y}; 1 in the x = y = 1 branch
  long t = -1;     // -1 until step 1/a
  int64_t Z1 = 0;  // current upper bound for Z
  long c1 = 0;     // largest feasible c (large-c rows)
};

/// Sieve tuple [a, delta_a, b, delta_b, c, x, y, z, Delta'] plus its
/// congruence context.
struct Candidate {
  mpz_class a, b;
  int da = 1, db = -1;
  long c = 0;
  long x = 1, y = 1, z = 0;
  long calX = 1;
  int64_t dprime = 0;
  mpz_class ell;
  long iota = 0;  // 0 when C != c/2
  int64_t Z1 = 0;
};

struct SolutionTuple {
  mpz_class a, b;
  long c = 0;
  long x = 1, y = 1, z = 0;
  int64_t X = 0, Y = 0, Z = 0;

  bool operator==(const SolutionTuple& o) const {
    return c == o.c && a == o.a && b == o.b && x == o.x && y == o.y && z == o.z && X == o.X &&
           Y == o.Y && Z == o.Z;
  }
  // ordered by (c, a, b, z, Z), then the remaining fields
  bool operator<(const SolutionTuple& o) const {
    if (c != o.c) return c < o.c;
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (z != o.z) return z < o.z;
    if (Z != o.Z) return Z < o.Z;
    if (x != o.x) return x < o.x;
    if (y != o.y) return y < o.y;
    if (X != o.X) return X < o.X;
    return Y < o.Y;
  }
};

struct SieveConfig {
  Branch branch = Branch::BigX;
  Variant variant = Variant::LargeC;
  int workers = 0;             // 0: library default
  bool paper_c1 = false;       // clamp large-c ranges to the published values
  bool full = false;           // x=y=1 large-c: lift the z = 2 restriction
  long z2_cmax = 2000;         // x=y=1 large-c: c cap for the z = 2 cell
  std::optional<long> only_z;
  std::optional<long> only_c;
  std::string checkpoint_path;
  bool resume = false;
  std::function<void(const Candidate&)> candidate_sink;  // optional stream
};

std::vector<PairRow> step1_pairs(Branch br, Variant var, const SieveConfig& cfg = {});
std::vector<PairRow> step1a_attach_t(Branch br, const std::vector<PairRow>& rows);
std::vector<PairRow> step1b_refine_z(Branch br, const std::vector<PairRow>& rows);

// enumeration of one row (small-c) or one (row, c) cell (large-c);
// candidates are passed to the sink in deterministic order
void step2_enumerate(Branch br, Variant var, const PairRow& row, long c,
                     const SieveConfig& cfg, const std::function<void(const Candidate&)>& sink);

// all second solutions compatible with a candidate
std::vector<SolutionTuple> step3_resolve(const Candidate& cand);
// paper-order reference scan, kept for differential testing
std::vector<SolutionTuple> step3_resolve_reference(const Candidate& cand);

// the finite x = y = 1, Z < 2z analysis; returns the surviving tuples
std::vector<SolutionTuple> search_x1y1_small_gap();

struct PipelineResult {
  int64_t step1_rows = 0;
  int64_t step1a_rows = 0;   // small-c only
  int64_t step1b_rows = 0;   // small-c only
  int64_t candidates = 0;
  std::vector<SolutionTuple> solutions;  // sorted by (c, a, b, z, Z, ...)
  bool resumed_units = false;
};

PipelineResult run_pipeline(const SieveConfig& cfg);

// published large-c step-1 row data used when cfg.paper_c1 is set
std::optional<long> published_c1(Branch br, long z, long calX);

}  // namespace pexeq
