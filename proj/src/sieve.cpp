#include "pexeq/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <cstdlib>
#include <map>
#include <sstream>
#include <tuple>

#include "pexeq/arith.hpp"
#include "pexeq/records.hpp"

namespace pexeq {

namespace {

mpz_class zpow(long b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(b).get_mpz_t(), e);
  return r;
}

const std::vector<long> kSmallC = {2, 3, 5, 6, 7, 10, 14};

struct PubRow {
  long z, calX, c1;
};
const PubRow kPubBigX[] = {
    {2, 2, 1000}, {3, 2, 1090}, {3, 3, 190}, {4, 2, 306}, {4, 3, 70},  {4, 4, 46},
    {5, 2, 138},  {5, 3, 38},   {5, 4, 26},  {5, 5, 22},  {6, 2, 82},  {6, 3, 26},
    {6, 4, 18},   {6, 5, 14},   {6, 6, 14},  {7, 2, 54},  {7, 3, 18},  {7, 4, 14},
    {8, 2, 38},   {8, 3, 14},   {9, 2, 30},  {10, 2, 26}, {11, 2, 22}, {12, 2, 18},
    {13, 2, 18},
};

bool large_c_admissible(long c) {
  return c >= 11 && c != 14 && !is_perfect_power(mpz_class(c)).has_value();
}

// calX < tau_c z with tau_c = log c / log(c'-1), checked exactly
bool calx_lt_tau_z(long c, long z, long calX) {
  long base = c == 2 ? 3 : c - 1;
  return zpow(base, calX) < zpow(c, z);
}

// C^z < K_c z (c^{z/calX} + 1); uncertain comparisons keep the row
bool cell_feasible_bigx(long c, long z, long calX, const Iv& Kc) {
  if (!calx_lt_tau_z(c, z, calX)) return false;
  mpz_class Cz = zpow(big_c(c).get_si(), z);
  Iv croot = iv_exp(Iv::rational(z, calX) * iv_log_si(c));
  Iv rhs = Kc * Iv::exact_si(z) * (croot + Iv::exact_si(1));
  return !(Iv::exact_z(Cz).lo >= rhs.hi);
}

// (C/sqrt(c))^z < (tau_c Z1)^{3/2}
bool cell_feasible_xeq1(long c, long z, int64_t Z1) {
  long C = big_c(c).get_si();
  Iv lhs = iv_exp(Iv::exact_si(z) * iv_log_si(C) - Iv::rational(z, 2) * iv_log_si(c));
  Iv tau = iv_log_si(c) / iv_log_si(c == 2 ? 3 : c - 1);
  Iv tz = tau * Iv::exact_si(Z1);
  Iv rhs = tz * iv_sqrt(tz);
  return !(lhs.lo >= rhs.hi);
}

Iv tau_ell(long c, const mpz_class& ell) { return iv_log_si(c) / iv_log_z(ell - 1); }

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

std::optional<long> published_c1(Branch br, long z, long calX) {
  if (br != Branch::BigX) return std::nullopt;
  for (auto& r : kPubBigX)
    if (r.z == z && r.calX == calX) return r.c1;
  return std::nullopt;
}

std::vector<PairRow> step1_pairs(Branch br, Variant var, const SieveConfig& cfg) {
  std::vector<PairRow> rows;
  if (var == Variant::LargeC) {
    if (br == Branch::BigX) {
      // flat K_c evaluation usable at any c >= 11, including 14 and perfect
      // powers: those enter the per-cell range computation even though the
      // enumeration later skips them
      std::map<long, Iv> kc_memo;
      auto kc_any = [&kc_memo](long c) {
        auto it = kc_memo.find(c);
        if (it != kc_memo.end()) return it->second;
        Iv v = [&] {
          if (large_c_admissible(c)) return kc_bound(c);
          Iv lc = iv_log_si(c), lC = iv_log_z(big_c(c));
          return Iv::rational(8576, 10) * kappa_c(c) * iv_sqr(lc) / iv_sqr(lC);
        }();
        kc_memo.emplace(c, v);
        return v;
      };
      // absolute z cap, derived over the admissible c only
      long z_cap = 1;
      for (long z = 2; z <= 40; z++) {
        long cap = (long)(4.2 * std::pow(7148.0 * z, 2.0 / z)) + 100;
        bool any = false;
        for (long calX = 2; calX <= (long)(1.05 * z) + 1 && !any; calX++) {
          if (!calx_lt_tau_z(11, z, calX)) continue;  // tau_c peaks at c = 11
          for (long c = 11; c <= cap && !any; c++)
            if (large_c_admissible(c)) any = cell_feasible_bigx(c, z, calX, kc_any(c));
        }
        if (any) z_cap = z;
      }
      for (long z = 2; z <= z_cap; z++) {
        long cap = (long)(4.2 * std::pow(7148.0 * z, 2.0 / z)) + 100;
        for (long calX = 2; calX <= (long)(1.05 * z) + 1; calX++) {
          if (!calx_lt_tau_z(11, z, calX)) continue;
          long best = 0;
          for (long c = 11; c <= cap; c++)
            if (cell_feasible_bigx(c, z, calX, kc_any(c))) best = c;
          if (best == 0) continue;
          PairRow r;
          r.z = z;
          r.calX = calX;
          r.c1 = best;
          if (auto pub = published_c1(br, z, calX))
            r.c1 = cfg.paper_c1 ? *pub : std::max<long>(best, *pub);
          rows.push_back(r);
        }
      }
    } else {
      for (long z = 2; z <= 60; z++) {
        int64_t Z1 = x1y1_zbound(11, z).z_bound;
        long cap = (long)(4.2 * std::pow(1.05 * 858.0 * z, 3.0 / z)) + 100;
        long best = 0;
        for (long c = 11; c <= cap; c++) {
          if (!large_c_admissible(c)) continue;
          if (cell_feasible_xeq1(c, z, Z1)) best = c;
        }
        if (best == 0) break;
        PairRow r;
        r.z = z;
        r.calX = 1;
        r.Z1 = Z1;
        r.c1 = best;
        rows.push_back(r);
      }
    }
    return rows;
  }
  // small-c variants
  for (long c : kSmallC) {
    Iv Kc = Iv::exact_si(kc_table(c));
    int empty_streak = 0;
    for (long z = 2; z <= 400 && empty_streak < 5; z++) {
      bool any = false;
      if (br == Branch::BigX) {
        for (long calX = 2; calX <= 2 * z + 2; calX++) {
          if (!calx_lt_tau_z(c, z, calX)) break;
          if (!cell_feasible_bigx(c, z, calX, Kc)) continue;
          PairRow r;
          r.c = c;
          r.z = z;
          r.calX = calX;
          rows.push_back(r);
          any = true;
        }
      } else {
        int64_t Z1 = x1y1_zbound(c, z).z_bound;
        if (cell_feasible_xeq1(c, z, Z1)) {
          PairRow r;
          r.c = c;
          r.z = z;
          r.calX = 1;
          r.Z1 = Z1;
          rows.push_back(r);
          any = true;
        }
      }
      empty_streak = any ? 0 : empty_streak + 1;
    }
  }
  return rows;
}

std::vector<PairRow> step1a_attach_t(Branch br, const std::vector<PairRow>& rows) {
  std::vector<PairRow> out;
  for (const auto& row : rows) {
    long c = row.c;
    if (c == 0) throw precondition_error("step1a_attach_t: small-c rows only");
    mpz_class cp = c_prime(c);
    long C = big_c(c).get_si();
    mpz_class cz = zpow(c, row.z);
    for (long t = 0; t <= row.z; t++) {
      mpz_class ell = lcm_z(cp, zpow(C, row.z - t));
      mpz_class Ct = zpow(C, t);
      if (br == Branch::BigX) {
        mpz_class b1 = iroot(cz, row.calX);
        if (ell - 1 > b1) continue;
        if (!(Ct < (int64_t)kc_table(c) * row.z)) continue;
      } else {
        mpz_class b1 = cz / 2;
        if (ell - 1 > b1) continue;
        Iv tlz = tau_ell(c, ell) * Iv::exact_si(row.Z1);
        if (Iv::exact_z(Ct).lo >= tlz.hi) continue;
        Iv lhs = iv_exp(Iv::exact_si(row.z) * iv_log_si(C) -
                        Iv::rational(row.z, 2) * iv_log_si(c));
        if (lhs.lo >= (Iv::exact_z(Ct) * iv_sqrt(tlz)).hi) continue;
      }
      PairRow r = row;
      r.t = t;
      out.push_back(r);
    }
  }
  return out;
}

std::vector<PairRow> step1b_refine_z(Branch br, const std::vector<PairRow>& rows) {
  std::vector<PairRow> out(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < rows.size(); i++) {
    PairRow row = rows[i];
    long C = big_c(row.c).get_si();
    StrongInput in;
    in.c = row.c;
    in.z = row.z;
    in.calX = row.calX;
    in.t = row.t;
    in.ell = lcm_z(c_prime(row.c), zpow(C, row.z - row.t));
    in.Zu = br == Branch::BigX
                ? (int64_t)kc_table(row.c) * row.z * row.z / row.calX
                : row.Z1;
    row.Z1 = strong_search(in);
    out[i] = row;
  }
  std::vector<PairRow> kept;
  for (auto& row : out) {
    long C = big_c(row.c).get_si();
    mpz_class ell = lcm_z(c_prime(row.c), zpow(C, row.z - row.t));
    mpz_class Ct = zpow(C, row.t);
    Iv tl = tau_ell(row.c, ell);
    if (br == Branch::BigX) {
      Iv rhs = tl * Iv::exact_si(row.calX) * Iv::exact_si(row.Z1);
      if (Iv::exact_z(Ct).lo >= rhs.hi) continue;
    } else {
      Iv tlz = tl * Iv::exact_si(row.Z1);
      if (Iv::exact_z(Ct).lo >= tlz.hi) continue;
      Iv lhs = iv_exp(Iv::exact_si(row.z) * iv_log_si(C) -
                      Iv::rational(row.z, 2) * iv_log_si(row.c));
      if (lhs.lo >= (Iv::exact_z(Ct) * iv_sqrt(tlz)).hi) continue;
    }
    kept.push_back(row);
  }
  return kept;
}

namespace {

// 2-adic sieve exponent: max{2, z - floor(log2(D1 / dprime))}
long iota_exponent(long z, const mpz_class& D1, const mpz_class& dprime) {
  long k = 0;
  mpz_class v = dprime;
  while (v * 2 <= D1) {
    v *= 2;
    k++;
  }
  return std::max<long>(2, z - k);
}

bool mod_pm1(const mpz_class& h, const mpz_class& mod) {
  mpz_class r = h % mod;
  return r == 1 || r == mod - 1;
}

struct StepState {
  Branch br;
  Variant var;
  long c, z, calX;
  int64_t rowZ1 = 0;  // 0 when no row-level bound applies
  mpz_class cz, Czm, cp;
  long C;
  bool two_adic;
  mpz_class Du_int;
  Iv Du_iv;
  mpz_class b1;
  Iv logc;
  Iv Kc;
};

void emit_candidate(const StepState& st, const mpz_class& a, const mpz_class& b, int da, int db,
                    long x, long y, int64_t dprime, const mpz_class& ell, long iota,
                    const std::function<void(const Candidate&)>& sink) {
  Candidate cand;
  cand.a = a;
  cand.b = b;
  cand.da = da;
  cand.db = db;
  cand.c = st.c;
  cand.x = x;
  cand.y = y;
  cand.z = st.z;
  cand.calX = st.calX;
  cand.dprime = dprime;
  cand.ell = ell;
  cand.iota = iota;
  int64_t zb = st.rowZ1 > 0 ? st.rowZ1 : INT64_MAX;
  if (st.br == Branch::BigX) {
    // per-candidate bound K_c log a log b / log^2 c
    Iv zc = st.Kc * iv_log_z(a) * iv_log_z(b) / iv_sqr(st.logc);
    zb = std::min<int64_t>(zb, floor_up(zc.hi));
  }
  cand.Z1 = zb;
  sink(cand);
}

// inclusive upper limit for b in the x = y = 1 window at fixed Delta':
//   Delta' < tau_b Z1   and   (C/sqrt c)^z < Delta' sqrt(tau_b Z1)
mpz_class xeq1_b_window(const StepState& st, const mpz_class& dv, int64_t Z1) {
  // log b < Z1 log c / Delta'
  Iv t1 = Iv::exact_si(Z1) * st.logc / Iv::exact_z(dv);
  // log b < Z1 log c Delta'^2 / lhs^2
  Iv lhs = iv_exp(Iv::exact_si(st.z) * iv_log_si(st.C) - Iv::rational(st.z, 2) * st.logc);
  Iv t2 = Iv::exact_si(Z1) * st.logc * iv_sqr(Iv::exact_z(dv)) / iv_sqr(lhs);
  Real cap = t1.hi < t2.hi ? t1.hi : t2.hi;
  if (!(cap < iv_log_z(st.b1).hi)) return st.b1;  // window wider than the range
  Real bmax;
  mpfr_exp(bmax.raw(), cap.raw(), MPFR_RNDU);
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), bmax.raw(), MPFR_RNDU);
  return m < st.b1 ? m : st.b1;
}

}  // namespace

void step2_enumerate(Branch br, Variant var, const PairRow& row, long c, const SieveConfig& cfg,
                     const std::function<void(const Candidate&)>& sink) {
  (void)cfg;
  StepState st;
  st.br = br;
  st.var = var;
  st.c = c;
  st.z = row.z;
  st.calX = row.calX;
  st.rowZ1 = (br == Branch::XEq1 || var == Variant::SmallC) ? row.Z1 : 0;
  st.cp = c_prime(c);
  st.C = big_c(c).get_si();
  st.cz = zpow(c, row.z);
  st.Czm = zpow(st.C, row.z);
  st.two_adic = (c > 2 && c % 4 == 2);
  st.logc = iv_log_si(c);
  if (br == Branch::BigX)
    st.Kc = var == Variant::SmallC ? Iv::exact_si(kc_table(c)) : kc_bound(c);

  std::vector<mpz_class> divisors;
  mpz_class Dl_int = 0;
  if (br == Branch::BigX) {
    st.b1 = iroot(st.cz, row.calX);
    if (var == Variant::SmallC) {
      st.Du_int = (int64_t)kc_table(c) * row.z;
      st.Du_iv = Iv::exact_z(st.Du_int);
      divisors = {zpow(st.C, row.t)};
    } else {
      st.Du_iv = st.Kc * Iv::exact_si(row.z);
      st.Du_int = mpz_class(floor_up(st.Du_iv.hi));
      divisors = bounded_divisors_of_power(st.C, row.z, st.Du_int + 1);
    }
  } else {
    Iv tc = st.logc / iv_log_si(c == 2 ? 3 : c - 1);
    st.Du_iv = tc * Iv::exact_si(row.Z1);
    st.Du_int = mpz_class(floor_up(st.Du_iv.hi));
    st.b1 = st.cz / 2;
    if (var == Variant::SmallC) {
      divisors = {zpow(st.C, row.t)};
    } else {
      Iv lhs = iv_exp(Iv::exact_si(row.z) * iv_log_si(st.C) -
                      Iv::rational(row.z, 2) * st.logc);
      Dl_int = mpz_class(floor_down((lhs / iv_sqrt(st.Du_iv)).lo));
      divisors = bounded_divisors_of_power(st.C, row.z, st.Du_int + 1);
    }
  }

  const std::vector<std::pair<int, int>> signs =
      br == Branch::BigX ? std::vector<std::pair<int, int>>{{1, -1}, {-1, 1}, {-1, -1}}
                         : std::vector<std::pair<int, int>>{{1, -1}, {-1, 1}};

  mpz_class r, a, by, bp;
  for (const auto& dv : divisors) {
    if (br == Branch::XEq1 && var == Variant::LargeC && dv < Dl_int) continue;
    mpz_class ell = lcm_z(st.cp, st.Czm / dv);
    if (ell - 1 > st.b1) continue;
    mpz_class b_hi = st.b1;
    if (br == Branch::XEq1) {
      b_hi = xeq1_b_window(st, dv, row.Z1);
      if (b_hi < 2) continue;
    }
    long iota = st.two_adic ? iota_exponent(row.z, st.Du_int, dv) : 0;
    mpz_class mod2 = st.two_adic ? zpow(2, iota) : mpz_class(1);
    for (auto [da, db] : signs) {
      std::vector<int> sbs = st.two_adic ? std::vector<int>{1, -1} : std::vector<int>{0};
      for (int sb : sbs) {
        mpz_class b0, step;
        if (st.two_adic) {
          auto r0 = crt({{db == 1 ? mpz_class(1) : ell - 1, ell},
                         {sb == 1 ? mpz_class(1) : mod2 - 1, mod2}});
          if (!r0) continue;
          step = lcm_z(ell, mod2);
          b0 = *r0 == 0 ? step : *r0;
        } else {
          b0 = db == 1 ? mpz_class(1) : ell - 1;
          step = ell;
        }
        for (mpz_class b = b0; b <= b_hi; b += step) {
          if (b <= 1) continue;
          if (br == Branch::BigX) {
            mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), row.calX);
            if (bp >= st.cz) break;  // calX < tau_b z fails from here on
            mpz_class bplus = b + 1, bpx = bplus;
            for (long x = 1; x <= row.calX && bpx < st.cz; x++, bpx *= bplus) {
              by = b;
              for (long y = 1; y <= row.calX; y++, by *= b) {
                if (std::max(x, y) != row.calX || std::gcd(x, y) != 1) continue;
                // parity of (x, y) must realize delta_a^x = -delta_b^y
                if (da == 1 && db == -1 && y % 2 == 0) continue;
                if (da == -1 && db == 1 && x % 2 == 0) continue;
                if (da == -1 && db == -1 && (x + y) % 2 == 0) continue;
                if (by + 2 > st.cz) break;
                r = st.cz - by;
                a = iroot(r, x);
                if (a <= b) continue;
                mpz_pow_ui(bp.get_mpz_t(), a.get_mpz_t(), x);
                if (bp != r) continue;
                if ((a - da) % ell != 0) continue;
                mpz_class am = a - da, bm = b - db, g;
                mpz_gcd(g.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
                if (Iv::exact_z(st.Czm).lo >= (st.Du_iv * Iv::exact_z(g)).hi) continue;
                if (st.two_adic && !mod_pm1(a, mod2)) continue;
                emit_candidate(st, a, b, da, db, x, y, dv.get_si(), ell, iota, sink);
              }
            }
          } else {
            if (st.two_adic) {
              // per-b sharpening of the 2-adic exponent (safe upward fudge)
              double d1 = (double)row.Z1 * std::log((double)c) /
                          std::log(mpz_get_d(b.get_mpz_t())) * (1.0 + 1e-9);
              long k = (long)std::floor(std::log2(std::max(d1 / mpz_get_d(dv.get_mpz_t()), 1.0)));
              long iota_b = std::max<long>(2, row.z - k);
              if (!mod_pm1(b, zpow(2, iota_b))) continue;
            }
            a = st.cz - b;
            emit_candidate(st, a, b, da, db, 1, 1, dv.get_si(), ell, iota, sink);
          }
        }
      }
    }
  }
}

namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = (u128)r * b % m;
    b = (u128)b * b % m;
    e >>= 1;
  }
  return r;
}

int64_t inv_mod(int64_t a, int64_t m) {
  int64_t t = 0, nt = 1, r = m, nr = a % m;
  if (nr < 0) nr += m;
  while (nr) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return t < 0 ? t + m : t;
}

// solve A*Y == R (mod M); returns (residue, modulus) or nullopt
std::optional<std::pair<int64_t, int64_t>> solve_linear(int64_t A, int64_t R, int64_t M) {
  A %= M;
  if (A < 0) A += M;
  R %= M;
  if (R < 0) R += M;
  if (A == 0) return R == 0 ? std::optional<std::pair<int64_t, int64_t>>({0, 1}) : std::nullopt;
  int64_t g = std::gcd(A, M);
  if (R % g != 0) return std::nullopt;
  int64_t m = M / g;
  int64_t y = (int64_t)((__int128)(R / g) % m * inv_mod(A / g, m) % m);
  return {{y, m}};
}

struct ResolveCtx {
  long c, z;
  mpz_class Czm;
  int64_t dp;
  int64_t c2;
  int64_t A1base, B1base;
  long alpha = 0;
  bool two_adic;
  int64_t Xu, Yu;
  u64 M1, a_red, b_red;
};

ResolveCtx make_resolve_ctx(const Candidate& cand) {
  ResolveCtx cx;
  cx.c = cand.c;
  cx.z = cand.z;
  cx.Czm = zpow(big_c(cand.c).get_si(), cand.z);
  cx.dp = cand.dprime;
  cx.c2 = (int64_t)cand.c * cand.c;
  cx.A1base = mpz_class((cand.a - cand.da) % cx.c2).get_si();
  cx.B1base = mpz_class((cand.b - cand.db) % cx.c2).get_si();
  cx.two_adic = cand.c > 2 && cand.c % 4 == 2;
  if (cx.two_adic) {
    long va = valuation(2, mpz_class(cand.a - 1)) + valuation(2, mpz_class(cand.a + 1));
    long vb = valuation(2, mpz_class(cand.b - 1)) + valuation(2, mpz_class(cand.b + 1));
    cx.alpha = std::min(va, vb) - 1;
  }
  Iv Z1 = Iv::exact_si(cand.Z1);
  cx.Xu = floor_up((Z1 * iv_log_si(cand.c) / iv_log_z(cand.a)).hi);
  cx.Yu = floor_up((Z1 * iv_log_si(cand.c) / iv_log_z(cand.b)).hi);
  mpz_class ab = cand.a + cand.b;
  mpz_class m1 = 1;
  long zf = 0;
  while (zf < cand.z && m1 * cand.c <= ab && m1 * cand.c < (mpz_class(1) << 62)) {
    m1 *= cand.c;
    zf++;
  }
  cx.M1 = m1.get_ui();
  cx.a_red = mpz_class(cand.a % m1).get_ui();
  cx.b_red = mpz_class(cand.b % m1).get_ui();
  return cx;
}

bool exact_power_check(const Candidate& cand, int64_t X, int64_t Y, int64_t& Z) {
  mpz_class ax, byv;
  mpz_pow_ui(ax.get_mpz_t(), cand.a.get_mpz_t(), X);
  mpz_pow_ui(byv.get_mpz_t(), cand.b.get_mpz_t(), Y);
  mpz_class w = ax + byv;
  int64_t i = 0;
  while (mpz_divisible_ui_p(w.get_mpz_t(), cand.c)) {
    w /= cand.c;
    i++;
  }
  if (w != 1) return false;
  Z = i;
  return true;
}

bool shared_filters(const ResolveCtx& cx, const Candidate& cand, int64_t X, int64_t Y) {
  int64_t delta = std::llabs((int64_t)cand.x * Y - X * (int64_t)cand.y);
  if (delta == 0) return false;
  if (std::gcd(X, Y) != 1) return false;
  if (cx.two_adic) {
    long v2 = 0;
    int64_t d = delta;
    while ((d & 1) == 0) d >>= 1, v2++;
    if (cx.z > cx.alpha + v2) return false;
  }
  mpz_class dl(delta), g;
  mpz_gcd(g.get_mpz_t(), dl.get_mpz_t(), cx.Czm.get_mpz_t());
  if (g != cx.dp) return false;
  if (cx.M1 > 1 &&
      (powmod_u64(cx.a_red, X, cx.M1) + powmod_u64(cx.b_red, Y, cx.M1)) % cx.M1 != 0)
    return false;
  return true;
}

}  // namespace

std::vector<SolutionTuple> step3_resolve(const Candidate& cand) {
  std::vector<SolutionTuple> out;
  ResolveCtx cx = make_resolve_ctx(cand);
  for (int64_t X = 1; X <= cx.Xu; X++) {
    if (cand.da == -1 && cand.db == 1 && X % 2 == 0) continue;
    std::vector<int> parities;
    if (cand.da == 1 && cand.db == -1) parities = {1};
    else if (cand.da == -1 && cand.db == 1) parities = {0, 1};
    else parities = {(int)((X + 1) % 2)};
    int64_t A1 = (cand.da == -1 && X % 2 == 0) ? (cx.c2 - cx.A1base) % cx.c2 : cx.A1base;
    for (int par : parities) {
      int64_t B1 = par == 1 ? cx.B1base
                            : (cand.db == -1 ? (cx.c2 - cx.B1base) % cx.c2 : cx.B1base);
      auto c1 = solve_linear(cand.x, (int64_t)((__int128)X * cand.y % cx.dp), cx.dp);
      if (!c1) continue;
      int64_t negA1X = (int64_t)(((__int128)((cx.c2 - A1) % cx.c2) * (X % cx.c2)) % cx.c2);
      auto c2q = solve_linear(B1, negA1X, cx.c2);
      if (!c2q) continue;
      auto merged = crt({{mpz_class((long)c1->first), mpz_class((long)c1->second)},
                         {mpz_class((long)c2q->first), mpz_class((long)c2q->second)},
                         {mpz_class(par), mpz_class(2)}});
      if (!merged) continue;
      mpz_class mod((long)c1->second);
      mpz_lcm(mod.get_mpz_t(), mod.get_mpz_t(), mpz_class((long)c2q->second).get_mpz_t());
      mpz_lcm(mod.get_mpz_t(), mod.get_mpz_t(), mpz_class(2).get_mpz_t());
      int64_t y0, step;
      if (mod.fits_slong_p()) {
        step = mod.get_si();
        y0 = merged->get_si();
      } else {
        // modulus beyond the Y range: at most the single residue matters
        if (*merged > cx.Yu) continue;
        step = cx.Yu + 1;
        y0 = merged->get_si();
      }
      if (y0 == 0) y0 = step;
      for (int64_t Y = y0; Y <= cx.Yu; Y += step) {
        if (!shared_filters(cx, cand, X, Y)) continue;
        int64_t Z;
        if (!exact_power_check(cand, X, Y, Z)) continue;
        out.push_back({cand.a, cand.b, cand.c, cand.x, cand.y, cand.z, X, Y, Z});
      }
    }
  }
  return out;
}

std::vector<SolutionTuple> step3_resolve_reference(const Candidate& cand) {
  std::vector<SolutionTuple> out;
  ResolveCtx cx = make_resolve_ctx(cand);
  for (int64_t X = 1; X <= cx.Xu; X++) {
    int64_t A1 = (cand.da == -1 && X % 2 == 0) ? (cx.c2 - cx.A1base) % cx.c2 : cx.A1base;
    for (int64_t Y = 1; Y <= cx.Yu; Y++) {
      int64_t d = (int64_t)cand.x * Y - X * (int64_t)cand.y;
      if (d == 0 || d % cx.dp != 0) continue;
      int lhs = (cand.da == -1 && X % 2 == 1) ? -1 : 1;
      int rhs = -((cand.db == -1 && Y % 2 == 1) ? -1 : 1);
      if (lhs != rhs) continue;
      int64_t B1 = Y % 2 == 1 ? cx.B1base
                              : (cand.db == -1 ? (cx.c2 - cx.B1base) % cx.c2 : cx.B1base);
      if ((int64_t)(((__int128)A1 * X + (__int128)B1 * Y) % cx.c2) % cx.c2 != 0) continue;
      if (!shared_filters(cx, cand, X, Y)) continue;
      int64_t Z;
      if (!exact_power_check(cand, X, Y, Z)) continue;
      out.push_back({cand.a, cand.b, cand.c, cand.x, cand.y, cand.z, X, Y, Z});
    }
  }
  return out;
}

std::vector<SolutionTuple> search_x1y1_small_gap() {
  std::vector<SolutionTuple> out;

  // X = 2 would force (b, c) = (2, 3) and 3(a^2 + 2^Y) = (a + 2)^2, impossible
  // since 3a^2 already exceeds (a + 2)^2 for a >= 4
  for (long a = 4; a <= 10000; a++)
    if (3 * a * a < (a + 2) * (a + 2)) throw std::logic_error("x1y1 gap: X=2 branch");

  // Y >= 4 survives only in finitely many (c, z, Y) cells
  std::vector<std::tuple<long, long, long>> cells;
  for (long c = 2; c <= 10000; c++) {
    Iv tau = iv_log_si(c) / iv_log_si(c == 2 ? 3 : c - 1);
    int dead = 0;
    for (long z = 2; z <= 200 && dead < 2; z++) {
      bool any = false;
      long ymax = floor_up((tau * Iv::exact_si(2 * z - 1)).hi);
      mpz_class Cz = zpow(big_c(c).get_si(), z);
      for (long Y = 4; Y <= ymax; Y++) {
        Iv croot = iv_exp(Iv::rational(2 * z - 1, Y) * iv_log_si(c));
        Iv rhs = Iv::exact_si(Y - 1) * (croot + Iv::exact_si(1));
        if (!(Iv::exact_z(Cz).lo >= rhs.hi)) {
          cells.push_back({c, z, Y});
          any = true;
        }
      }
      dead = any ? 0 : dead + 1;
    }
  }
  for (auto [c, z, Y] : cells) {
    // b^Y - b = c^Z - c^z must fail for every z < Z < 2z
    for (long Z = z + 1; Z < 2 * z; Z++) {
      mpz_class rhs = zpow(c, Z) - zpow(c, z);
      for (mpz_class b = 2;; b++) {
        mpz_class v;
        mpz_pow_ui(v.get_mpz_t(), b.get_mpz_t(), Y);
        v -= b;
        if (v == rhs) throw std::logic_error("x1y1 gap: unexpected Y>=4 solution");
        if (v > rhs) break;
      }
    }
  }

  // Y = 3 with b^2 = 1 + K c^z: K = 1 forces b = c^{Z-z} - 1, solvable only
  // for c = 2; K > 1 contradicts c^{Z+3} < (4/3)^8 < 10
  for (long c = 2; c <= 100; c++) {
    for (unsigned long u = 1; u <= 60; u++) {
      mpz_class b = zpow(c, u) - 1;
      if (b < 2) continue;
      mpz_class v = b * b - 1;
      mpz_class w = v;
      long zz = 0;
      while (w % c == 0) {
        w /= c;
        zz++;
      }
      if (w != 1 || zz <= (long)u) continue;
      mpz_class a = zpow(c, zz) - b;
      if (a <= b) continue;
      out.push_back({a, b, c, 1, 1, zz, 1, 3, zz + (long)u});
    }
  }
  if (!(std::pow(4.0 / 3.0, 8.0) < 10.0)) throw std::logic_error("x1y1 gap: K>1 branch");

  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Unit {
  PairRow row;
  long c;
  std::string key;
};

std::string fingerprint(const SieveConfig& cfg) {
  std::ostringstream os;
  os << "branch=" << (cfg.branch == Branch::BigX ? "big-x" : "x-eq-1")
     << ";variant=" << (cfg.variant == Variant::LargeC ? "large-c" : "small-c")
     << ";paper_c1=" << cfg.paper_c1 << ";full=" << cfg.full << ";z2_cmax=" << cfg.z2_cmax
     << ";only_z=" << (cfg.only_z ? std::to_string(*cfg.only_z) : "-")
     << ";only_c=" << (cfg.only_c ? std::to_string(*cfg.only_c) : "-");
  return os.str();
}

std::string unit_key(const Unit& u) {
  std::ostringstream os;
  os << "z" << u.row.z << "/X" << u.row.calX << "/c" << u.c;
  if (u.row.t >= 0) os << "/t" << u.row.t;
  return os.str();
}

}  // namespace

PipelineResult run_pipeline(const SieveConfig& cfg) {
  PipelineResult res;
  if (cfg.workers > 0) omp_set_num_threads(cfg.workers);

  auto rows = step1_pairs(cfg.branch, cfg.variant, cfg);
  res.step1_rows = rows.size();
  // partition selectors restrict every later stage of the run
  if (cfg.only_z || (cfg.only_c && cfg.variant == Variant::SmallC)) {
    std::vector<PairRow> kept;
    for (auto& r : rows) {
      if (cfg.only_z && r.z != *cfg.only_z) continue;
      if (cfg.only_c && cfg.variant == Variant::SmallC && r.c != *cfg.only_c) continue;
      kept.push_back(r);
    }
    rows = kept;
  }
  if (cfg.variant == Variant::SmallC) {
    rows = step1a_attach_t(cfg.branch, rows);
    res.step1a_rows = rows.size();
    rows = step1b_refine_z(cfg.branch, rows);
    res.step1b_rows = rows.size();
  }

  std::vector<Unit> units;
  for (const auto& row : rows) {
    if (cfg.only_z && row.z != *cfg.only_z) continue;
    if (cfg.variant == Variant::SmallC) {
      if (cfg.only_c && row.c != *cfg.only_c) continue;
      units.push_back({row, row.c, {}});
    } else {
      long chi = row.c1;
      if (cfg.branch == Branch::XEq1 && row.z == 2 && !cfg.full)
        chi = std::min(chi, cfg.z2_cmax);
      for (long c = 11; c <= chi; c++) {
        if (!large_c_admissible(c)) continue;
        if (cfg.only_c && c != *cfg.only_c) continue;
        units.push_back({row, c, {}});
      }
    }
  }
  for (auto& u : units) u.key = unit_key(u);

  CheckpointLog log;
  if (!cfg.checkpoint_path.empty())
    log = CheckpointLog(cfg.checkpoint_path, fingerprint(cfg), cfg.resume);

  struct UnitOut {
    int64_t cands = 0;
    std::vector<SolutionTuple> sols;
    bool recovered = false;
  };
  std::vector<UnitOut> outs(units.size());
  // snapshot recovered units before the parallel section
  for (size_t i = 0; i < units.size(); i++) {
    if (log.enabled() && log.done(units[i].key)) {
      outs[i].cands = log.recovered_candidates(units[i].key);
      outs[i].sols = log.recovered_solutions(units[i].key);
      outs[i].recovered = true;
      res.resumed_units = true;
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < units.size(); i++) {
    if (outs[i].recovered) continue;
    const Unit& u = units[i];
    UnitOut& uo = outs[i];
    step2_enumerate(cfg.branch, cfg.variant, u.row, u.c, cfg, [&](const Candidate& cand) {
      uo.cands++;
      if (cfg.candidate_sink) cfg.candidate_sink(cand);
      auto sols = step3_resolve(cand);
      uo.sols.insert(uo.sols.end(), sols.begin(), sols.end());
    });
    if (log.enabled()) log.record(u.key, uo.cands, uo.sols);
  }

  for (auto& uo : outs) {
    res.candidates += uo.cands;
    res.solutions.insert(res.solutions.end(), uo.sols.begin(), uo.sols.end());
  }
  std::sort(res.solutions.begin(), res.solutions.end());
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()),
                      res.solutions.end());
  return res;
}

}  // namespace pexeq
