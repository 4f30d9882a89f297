#include "pexeq/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "pexeq/arith.hpp"

namespace pexeq {

namespace {

Iv iv_min(const Iv& a, const Iv& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

Iv two_e064() { return Iv::exact_si(2) * iv_exp(Iv::rational(64, 100)); }

// largest fixed point of T = coeff * log^2(q * T), solved once per rounding
// direction; iteration starts far above the crossing and is monotone down,
// stopping once the per-step improvement is negligible
Real fixed_point_loglin(const Real& coeff, const Real& q, mpfr_rnd_t rnd) {
  Real x = Real::of(1e60);
  Real eps = Real::of(1e-30);
  for (int i = 0; i < 1000; i++) {
    Real arg = r_mul(q, x, rnd);
    if (mpfr_sgn(arg.raw()) <= 0) break;
    Real xn = r_mul(coeff, r_sqr(r_log(arg, rnd), rnd), rnd);
    if (xn >= x) break;
    bool settled = r_sub(x, xn, MPFR_RNDU) < r_mul(x, eps, MPFR_RNDD);
    x = xn;
    if (settled) break;
  }
  return x;
}

Iv fixed_point_loglin_iv(const Iv& coeff, const Iv& q) {
  return {fixed_point_loglin(coeff.lo, q.lo, MPFR_RNDD),
          fixed_point_loglin(coeff.hi, q.hi, MPFR_RNDU)};
}

// largest z with z < A * log^2(B * z * (z+1)); upper endpoint only
int64_t fixed_point_quadlog(const Iv& A, const Iv& B) {
  Real x = Real::of(1e60);
  Real eps = Real::of(1e-30);
  for (int i = 0; i < 1000; i++) {
    Real arg = r_mul(B.hi, r_mul(x, r_add(x, Real::of(1L), MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
    Real xn = r_mul(A.hi, r_sqr(r_log(arg, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
    if (xn >= x) break;
    bool settled = r_sub(x, xn, MPFR_RNDU) < r_mul(x, eps, MPFR_RNDD);
    x = xn;
    if (settled) break;
  }
  return floor_up(x) + 1;
}

// largest integer r with r^2 * den <= num (num, den >= 1)
int64_t isqrt_ratio(int64_t num, int64_t den) {
  int64_t r = (int64_t)std::sqrt((double)num / (double)den);
  while ((__int128)(r + 1) * (r + 1) * den <= num) r++;
  while (r > 0 && (__int128)r * r * den > num) r--;
  return r;
}

}  // namespace

mpz_class c_prime(const mpz_class& c) { return c == 2 ? mpz_class(4) : c; }

mpz_class big_c(const mpz_class& c) {
  if (c > 2 && c % 4 == 2) return c / 2;
  return c;
}

Iv kappa_c(const mpz_class& c) {
  if (c % 4 == 2) return Iv::exact_si(1);
  return iv_log_z(c) / iv_log_z(c - 1);
}

Iv padic_twolog_bound(const TwoLogQuery& q) {
  if (q.M < 2) throw precondition_error("padic_twolog_bound: M must be >= 2");
  Iv logM = iv_log_z(q.M);
  if (q.H1.hi < logM.lo || q.H2.hi < logM.lo)
    throw precondition_error("padic_twolog_bound: H_j below log M");
  Iv bprime = Iv::exact_z(q.b1) / q.H2 + Iv::exact_z(q.b2) / q.H1;
  Iv arm = iv_log(bprime) + iv_log(logM) + Iv::rational(64, 100);
  Iv b = iv_max(arm, Iv::exact_si(4) * logM);
  Iv num = Iv::rational(536, 10) * Iv::exact_z(q.g) * q.H1 * q.H2;
  return num / iv_sqr(iv_sqr(logM)) * iv_sqr(b);
}

long kc_table(long c) {
  switch (c) {
    case 2: return 13100;
    case 3: return 7400;
    case 5: return 1900;
    case 6: return 12500;
    case 7: return 1100;
    case 10: return 3600;
    case 14: return 2000;
    default: return 0;
  }
}

Iv kc_bound(const mpz_class& c) {
  if (c < 2) throw precondition_error("kc_bound: c must be >= 2");
  if (c > 2 && is_perfect_power(c)) throw precondition_error("kc_bound: c must not be a perfect power");
  mpz_class C = big_c(c);
  Iv kap = kappa_c(c);
  Iv lc = iv_log_z(c), lC = iv_log_z(C);
  if (c >= 1000) {
    // the fixed-point branch needs T > C^4 log c/(2e^.64 log C) >= c^2/3.8,
    // while its largest fixed point stays below 53.6*1.1*16/log^2 c *
    // log^2(3.8 T) < 3e4; no overlap from here on
    return Iv::rational(8576, 10) * kap * iv_sqr(lc) / iv_sqr(lC);
  }
  mpz_class C4;
  mpz_pow_ui(C4.get_mpz_t(), C.get_mpz_t(), 4);
  Iv thr = Iv::exact_z(C4) * lc / (two_e064() * lC);
  Iv flat = Iv::rational(8576, 10) * kap * iv_sqr(lc) / iv_sqr(lC);
  Iv case1 = iv_min(thr, flat);

  // second branch: T < coeff * log^2(q T) beyond the threshold
  Iv coeff = Iv::rational(536, 10) * kap * iv_sqr(lc) / iv_sqr(iv_sqr(lC));
  Iv q = two_e064() * lC / lc;
  Iv fp = fixed_point_loglin_iv(coeff, q);

  bool feasible = !(fp.hi < thr.lo);  // uncertain counts as feasible
  if (kc_table(c.fits_slong_p() ? c.get_si() : 0) == 0) {
    // the second branch must be infeasible outside the seven small c
    if (feasible) return iv_max(flat, fp);
    return flat;
  }
  if (!feasible) return case1;
  return iv_max(case1, fp);
}

X1Y1Bound x1y1_zbound(long c, long z) {
  bool exc = (c == 2 && z <= 3) || (c == 3 && z == 2);
  return {858 * (int64_t)z - 1, exc};
}

namespace {

struct StrongCtx {
  long c, z, calX, t;
  mpz_class M;
  int bound_kind;  // 0: 2KL-1, 1: KL-1, 2: KL(z-t)-1
  Iv logM, loglogM;
  Iv a1, a2;
  Iv ell_term;  // log(calX/log(ell+1) + 1/log(ell-1))
  Iv logZuz;    // log(Zu/z)
};

StrongCtx make_ctx(const StrongInput& in) {
  StrongCtx cx;
  cx.c = in.c;
  cx.z = in.z;
  cx.calX = in.calX;
  cx.t = in.t;
  mpz_class C = big_c(in.c);
  if (in.t >= in.z - 1) {
    cx.M = in.c == 2 ? mpz_class(4) : C;
    cx.bound_kind = in.c == 2 ? 0 : 1;
  } else {
    mpz_pow_ui(cx.M.get_mpz_t(), C.get_mpz_t(), in.z - in.t);
    cx.bound_kind = 2;
  }
  cx.logM = iv_log_z(cx.M);
  cx.loglogM = iv_log(cx.logM);
  cx.a1 = Iv::exact_si(in.z) * iv_log_si(in.c) / cx.logM;
  cx.a2 = cx.a1 / Iv::exact_si(in.calX);
  Iv l_p1 = iv_log_z(in.ell + 1), l_m1 = iv_log_z(in.ell - 1);
  cx.ell_term = iv_log(Iv::exact_si(in.calX) / l_p1 + Iv::exact_si(1) / l_m1);
  cx.logZuz = iv_log(Iv::exact_si(in.Zu) / Iv::exact_si(in.z));
  return cx;
}

std::optional<int64_t> refine_with_ctx(const StrongCtx& cx, long k0, long L) {
  Iv k = Iv::rational(k0, 15);
  Iv Ka = k * Iv::exact_si(L) * cx.a1 * cx.a2;
  auto kfl = iv_floor_exact(Ka);
  if (!kfl) return std::nullopt;  // straddling floor: treat as failure
  int64_t K = *kfl + 1;
  if (K < 3) return std::nullopt;

  int64_t R1 = isqrt_ratio(L, cx.calX) + 1;
  int64_t R2 = isqrt_ratio((K - 1) * L, cx.calX) + 1;
  int64_t S1 = isqrt_ratio((int64_t)L * cx.calX, 1) + 1;
  int64_t S2 = isqrt_ratio((K - 1) * L * cx.calX, 1) + 1;
  int64_t R = R1 + R2 - 1, S = S1 + S2 - 1;
  Iv gamma = Iv::exact_si(3 * R * S - K * L) / Iv::exact_si(6 * R * S);

  Iv sqK1 = iv_sqrt(Iv::exact_si(K - 1));
  Iv epsK = Iv::rational(3, 2) +
            iv_log((Iv::exact_si(1) + sqK1) * iv_sqrt(Iv::exact_si(K)) / Iv::exact_si(2 * K - 2));
  Iv B = cx.loglogM + cx.logZuz + cx.ell_term - Iv::rational(1, 2) * iv_log(k) + epsK;

  Iv f0 = Iv::exact_si(K * (L - 1));
  Iv f1 = Iv::exact_si(3) * iv_log_si(K * L) / cx.logM;
  Iv f2 = Iv::exact_si(K - 1) * B / cx.logM;
  Iv f3 = gamma * Iv::exact_si(L * R) * cx.a1;
  Iv f4 = gamma * Iv::exact_si(L * S) * cx.a2;
  if (!f0.certainly_gt(f1 + f2 + f3 + f4)) return std::nullopt;

  Iv z2iv = iv_sqrt(k) * Iv::exact_si(L) * Iv::exact_si(cx.z) * (Iv::exact_si(2) * cx.a2);
  int64_t Z2 = floor_up(z2iv.hi) + 1;

  int64_t main_bound;
  switch (cx.bound_kind) {
    case 0: main_bound = 2 * K * L - 1; break;
    case 1: main_bound = K * L - 1; break;
    default: main_bound = K * L * (cx.z - cx.t) - 1; break;
  }
  return std::max(main_bound, Z2);
}

}  // namespace

std::optional<int64_t> strong_refine(const StrongInput& in, long k0, long L) {
  if (in.z < 1 || in.calX < 1 || in.t < 0 || in.t > in.z || in.Zu < 1 || in.ell < 3)
    throw precondition_error("strong_refine: malformed parameters");
  return refine_with_ctx(make_ctx(in), k0, L);
}

namespace {

// plain-double mirror of refine_with_ctx, used only to rank grid points;
// every accepted bound is re-verified with outward rounding
std::optional<double> refine_double(const StrongCtx& cx, long k0, long L) {
  double logM = cx.logM.mid(), a1 = cx.a1.mid(), a2 = cx.a2.mid();
  double k = k0 / 15.0;
  int64_t K = (int64_t)std::floor(k * L * a1 * a2) + 1;
  if (K < 3) return std::nullopt;
  int64_t R1 = isqrt_ratio(L, cx.calX) + 1;
  int64_t R2 = isqrt_ratio((K - 1) * L, cx.calX) + 1;
  int64_t S1 = isqrt_ratio((int64_t)L * cx.calX, 1) + 1;
  int64_t S2 = isqrt_ratio((K - 1) * L * cx.calX, 1) + 1;
  int64_t R = R1 + R2 - 1, S = S1 + S2 - 1;
  double gamma = (3.0 * R * S - (double)K * L) / (6.0 * R * S);
  double epsK =
      1.5 + std::log((1.0 + std::sqrt((double)K - 1)) * std::sqrt((double)K) / (2.0 * K - 2));
  double B = cx.loglogM.mid() + cx.logZuz.mid() + cx.ell_term.mid() - 0.5 * std::log(k) + epsK;
  double f0 = (double)K * (L - 1);
  double f1 = 3.0 * std::log((double)K * L) / logM;
  double f2 = (K - 1) * B / logM;
  double f3 = gamma * L * R * a1;
  double f4 = gamma * L * S * a2;
  if (!(f0 > f1 + f2 + f3 + f4)) return std::nullopt;
  double Z2 = std::floor(std::sqrt(k) * L * cx.z * 2 * a2) + 1;
  double main_bound;
  switch (cx.bound_kind) {
    case 0: main_bound = 2.0 * K * L - 1; break;
    case 1: main_bound = (double)K * L - 1; break;
    default: main_bound = (double)K * L * (cx.z - cx.t) - 1; break;
  }
  return std::max(main_bound, Z2);
}

}  // namespace

int64_t strong_search(const StrongInput& in) {
  StrongInput cur = in;
  for (int pass = 0; pass < 3; pass++) {
    StrongCtx cx = make_ctx(cur);
    // rank the grid cheaply, then certify the best few candidates
    std::vector<std::tuple<double, long, long>> ranked;
    for (long k0 = 1; k0 <= 60; k0++)
      for (long L = 2; L <= 35; L++)
        if (auto d = refine_double(cx, k0, L)) ranked.push_back({*d, k0, L});
    std::sort(ranked.begin(), ranked.end());
    int64_t best = cur.Zu;
    int certified = 0;
    for (auto& [d, k0, L] : ranked) {
      if (certified >= 8 && d > (double)best) break;
      auto r = refine_with_ctx(cx, k0, L);
      if (r) {
        certified++;
        best = std::min(best, *r);
      }
      if (certified >= 8) break;
    }
    if (best >= cur.Zu) break;
    cur.Zu = best;
  }
  return cur.Zu;
}

Iv nf_padic_twolog_bound(const NfBoundQuery& q) {
  if (q.p < 2) throw precondition_error("nf_padic_twolog_bound: p must be prime");
  Iv logp = iv_log_si(q.p);
  if (q.H1.hi < logp.lo || q.H2.hi < logp.lo)
    throw precondition_error("nf_padic_twolog_bound: H_j below log p");
  Iv bprime = Iv::exact_z(q.b1) / q.H2 + Iv::exact_z(q.b2) / q.H1;
  Iv arm1 = iv_log(bprime) + iv_log(logp) + Iv::rational(4, 10);
  Iv arm2 = Iv::rational(10 * q.f_pi, q.D) * logp;
  Iv b = iv_max(iv_max(arm1, arm2), Iv::exact_si(10));
  Iv num = Iv::exact_si(24) * Iv::exact_si(q.D * q.D) * Iv::exact_si(q.p) * Iv::exact_z(q.g) *
           q.H1 * q.H2;
  Iv den = Iv::exact_si(q.f_pi * q.f_pi) * Iv::exact_si(q.p - 1) * iv_sqr(iv_sqr(logp));
  return num / den * iv_sqr(b);
}

Iv complex_twolog_bound(const ComplexBoundQuery& q) {
  if (q.k < 1) throw precondition_error("complex_twolog_bound: k must be >= 1");
  Iv H = iv_max(Iv::exact_si(q.D) * q.height + Iv::exact_si(22) * q.log_abs, Iv::exact_si(40));
  Iv arm1 = iv_log(Iv::exact_si(q.k) / Iv::exact_si(25)) + Iv::rational(235, 100) +
            Iv::rational(102, 10) / Iv::exact_si(q.D);
  Iv arm2 = Iv::rational(34, q.D);
  Iv arm3 = Iv::rational(1, 10) / iv_sqrt(Iv::rational(q.D, 2));
  Iv b = iv_max(iv_max(arm1, arm2), arm3);
  return Iv::rational(9, 8) * Iv::exact_si(q.D * q.D) * H * iv_sqr(b);
}

int64_t complex_zbound(long c, const Iv& chi) {
  if (!(chi.lo > Real::of(2L))) throw precondition_error("complex_zbound: chi must exceed 2");
  Iv logc = iv_log_si(c);
  Iv coeff = Iv::exact_si(9) / (Iv::exact_si(1) - Iv::exact_si(2) / chi) *
             (Iv::exact_si(1) + Iv::exact_si(22) * iv_pi() / logc);
  auto rhs_hi = [&](const Real& x) {
    Real arm = r_add(r_log(x, MPFR_RNDU), Real::ratio(43, 10, MPFR_RNDU), MPFR_RNDU);
    Real m = r_max(arm, Real::of(17L));
    return r_add(r_mul(coeff.hi, r_sqr(m, MPFR_RNDU), MPFR_RNDU), Real::of(1L), MPFR_RNDU);
  };
  Real x = Real::of(1e60);
  for (int i = 0; i < 1000; i++) {
    Real xn = rhs_hi(x);
    if (xn >= x) break;
    x = xn;
  }
  return floor_up(x);
}

FermatBounds fermat_bound_suite(long c, int v_max) {
  long e;
  switch (c) {
    case 17: e = 2; break;
    case 257: e = 4; break;
    case 65537: e = 8; break;
    default: throw precondition_error("fermat_bound_suite: c must be 17, 257 or 65537");
  }
  FermatBounds fb;
  fb.c = c;
  fb.e = e;
  Iv logc = iv_log_si(c);
  Iv log2c = iv_sqr(logc);
  const Iv t1 = Iv::rational(536, 10) * Iv::exact_si(32);            // 53.6 * 2 * 4^2
  const Iv t2 = Iv::rational(537, 10) * Iv::exact_si(32) * Iv::rational(9, 4);
  const Iv t3 = Iv::exact_si(384);                                   // 24 * 4 * 2^2
  const Iv kFP = Iv::exact_si(22000);                                // 2.2e4 fixed-point constant

  // admissible orders E: 2e for even Z; divisors of e that are >= 4 for odd Z
  std::vector<long> evens{2 * e}, odds;
  for (long d = 4; d <= e; d *= 2) odds.push_back(d);

  auto per_e_dprime = [&](long E) {  // bound coefficient for Delta' / min{z,Z}
    return iv_max(t1 * Iv::exact_si(E * E), kFP * log2c / Iv::exact_si(E));
  };
  auto per_e_delta = [&](long E) {   // bound coefficient for Delta / min{z,Z}
    return iv_max(t1 * Iv::exact_si(E * E * E), kFP * log2c);
  };
  std::vector<long> all_E = evens;
  all_E.insert(all_E.end(), odds.begin(), odds.end());

  Iv Bcap = per_e_dprime(all_E[0]);
  for (size_t i = 1; i < all_E.size(); i++) Bcap = iv_max(Bcap, per_e_dprime(all_E[i]));

  // largest m admitting an integer j >= j_min(m) with c^j < Bcap * m
  auto scan_cap = [&](auto j_min) {
    int64_t cap = 1;
    for (int64_t m = 1; m <= 300; m++) {
      long j = j_min(m);
      mpz_class cj;
      mpz_pow_ui(cj.get_mpz_t(), mpz_class(c).get_mpz_t(), j);
      Iv lhs = Iv::exact_z(cj);
      Iv rhs = Bcap * Iv::exact_si(m);
      if (!(lhs.lo >= rhs.hi)) cap = m;  // not certainly contradictory
    }
    return cap;
  };
  fb.min_cap_lemma = scan_cap([](int64_t m) { return (long)((m + 2) / 3); });
  int64_t joint_scan = scan_cap([&](int64_t m) {
    return (long)std::max<int64_t>((m + 2) / 3, std::max<int64_t>(m - v_max, 1));
  });
  int64_t v_route = (3 * (int64_t)v_max - 1) / 2;  // largest m with (2/3)m < v_max
  fb.min_cap_joint = std::max(std::min(joint_scan, fb.min_cap_lemma), v_route);

  // z <= Z, Z even: E = 2e, Z < 4z
  Iv A = t3 * Iv::exact_si(c) * Iv::exact_si(e) / (Iv::exact_si(c - 1) * log2c);
  Iv branch1 = Iv::exact_si(25) * t3 * Iv::exact_si(c) * Iv::exact_si(e) / Iv::exact_si(c - 1);
  Iv e04 = Iv::exact_si(2) * iv_exp(Iv::rational(4, 10));
  {
    Iv Beven = e04 * Iv::exact_si(4) * per_e_delta(2 * e);
    int64_t zb = std::max(floor_up(branch1.hi) + 1, fixed_point_quadlog(A, Beven));
    fb.zcap_even = 4 * zb;
  }
  if (!odds.empty()) {
    long Eu = *std::max_element(odds.begin(), odds.end());
    Iv dmax = per_e_delta(odds[0]);
    for (size_t i = 1; i < odds.size(); i++) dmax = iv_max(dmax, per_e_delta(odds[i]));
    Iv Bodd = e04 * t2 * Iv::exact_si(Eu) * dmax;
    int64_t zb = std::max(floor_up(branch1.hi) + 1, fixed_point_quadlog(A, Bodd));
    Iv chi = c == 257 ? Iv::rational(229, 100) : Iv::rational(224, 100);
    int64_t gap = floor_up((chi * Iv::exact_si(zb)).hi) + 1;
    fb.zcap_odd = std::max(gap, complex_zbound(c, chi));
  }
  {
    // Z <= z
    Iv dall = per_e_delta(all_E[0]);
    for (size_t i = 1; i < all_E.size(); i++) dall = iv_max(dall, per_e_delta(all_E[i]));
    mpz_class c5;
    mpz_pow_ui(c5.get_mpz_t(), mpz_class(c).get_mpz_t(), 5);
    Iv alt = Iv::exact_z(c5) / (Iv::exact_si(4) * e04) - Iv::exact_si(1);
    int64_t b1 = floor_up(iv_min(branch1, alt).hi) + 1;
    fb.zcap_Z_le_z = std::max(b1, fixed_point_quadlog(A, e04 * dall));
  }
  {
    int64_t g = std::max<int64_t>(fb.min_cap_joint, 200 * fb.min_cap_joint);
    if (!odds.empty()) g = std::max(g, complex_zbound(c, Iv::exact_si(200)));
    fb.global_Z_cap = g;
  }
  return fb;
}

}  // namespace pexeq
