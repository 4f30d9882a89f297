#include "pexeq/real.hpp"

#include <algorithm>
#include <stdexcept>

namespace pexeq {

std::string Real::str(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, v_);
  return buf;
}

Real r_add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}
Real r_sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}
Real r_mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}
Real r_div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
  Real r;
  mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
  return r;
}
Real r_log(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_log(r.raw(), a.raw(), rnd);
  return r;
}
Real r_log_z(const mpz_class& a, mpfr_rnd_t rnd) {
  Real x;
  mpfr_set_z(x.raw(), a.get_mpz_t(), rnd);
  return r_log(x, rnd);
}
Real r_log_si(long a, mpfr_rnd_t rnd) {
  Real x = Real::of(a);
  return r_log(x, rnd);
}
Real r_sqrt(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_sqrt(r.raw(), a.raw(), rnd);
  return r;
}
Real r_sqr(const Real& a, mpfr_rnd_t rnd) {
  Real r;
  mpfr_sqr(r.raw(), a.raw(), rnd);
  return r;
}
Real r_pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd) {
  Real r;
  mpfr_pow_ui(r.raw(), a.raw(), e, rnd);
  return r;
}
Real r_max(const Real& a, const Real& b) { return a < b ? b : a; }

Iv Iv::exact_z(const mpz_class& x) {
  Iv r;
  mpfr_set_z(r.lo.raw(), x.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi.raw(), x.get_mpz_t(), MPFR_RNDU);
  return r;
}

Iv Iv::operator*(const Iv& o) const {
  // general sign handling: outward min/max over the four endpoint products
  Real cands_lo[4] = {r_mul(lo, o.lo, MPFR_RNDD), r_mul(lo, o.hi, MPFR_RNDD),
                      r_mul(hi, o.lo, MPFR_RNDD), r_mul(hi, o.hi, MPFR_RNDD)};
  Real cands_hi[4] = {r_mul(lo, o.lo, MPFR_RNDU), r_mul(lo, o.hi, MPFR_RNDU),
                      r_mul(hi, o.lo, MPFR_RNDU), r_mul(hi, o.hi, MPFR_RNDU)};
  Iv r{cands_lo[0], cands_hi[0]};
  for (int i = 1; i < 4; i++) {
    if (cands_lo[i] < r.lo) r.lo = cands_lo[i];
    if (cands_hi[i] > r.hi) r.hi = cands_hi[i];
  }
  return r;
}

Iv Iv::operator/(const Iv& o) const {
  if (mpfr_sgn(o.lo.raw()) <= 0 && mpfr_sgn(o.hi.raw()) >= 0)
    throw std::domain_error("interval division by interval containing zero");
  Real cands_lo[4] = {r_div(lo, o.lo, MPFR_RNDD), r_div(lo, o.hi, MPFR_RNDD),
                      r_div(hi, o.lo, MPFR_RNDD), r_div(hi, o.hi, MPFR_RNDD)};
  Real cands_hi[4] = {r_div(lo, o.lo, MPFR_RNDU), r_div(lo, o.hi, MPFR_RNDU),
                      r_div(hi, o.lo, MPFR_RNDU), r_div(hi, o.hi, MPFR_RNDU)};
  Iv r{cands_lo[0], cands_hi[0]};
  for (int i = 1; i < 4; i++) {
    if (cands_lo[i] < r.lo) r.lo = cands_lo[i];
    if (cands_hi[i] > r.hi) r.hi = cands_hi[i];
  }
  return r;
}

Iv iv_log(const Iv& a) {
  if (mpfr_sgn(a.lo.raw()) <= 0) throw std::domain_error("iv_log of nonpositive interval");
  return {r_log(a.lo, MPFR_RNDD), r_log(a.hi, MPFR_RNDU)};
}
Iv iv_log_z(const mpz_class& a) { return {r_log_z(a, MPFR_RNDD), r_log_z(a, MPFR_RNDU)}; }
Iv iv_log_si(long a) { return {r_log_si(a, MPFR_RNDD), r_log_si(a, MPFR_RNDU)}; }
Iv iv_exp(const Iv& a) {
  Iv r;
  mpfr_exp(r.lo.raw(), a.lo.raw(), MPFR_RNDD);
  mpfr_exp(r.hi.raw(), a.hi.raw(), MPFR_RNDU);
  return r;
}
Iv iv_pi() {
  Iv r;
  mpfr_const_pi(r.lo.raw(), MPFR_RNDD);
  mpfr_const_pi(r.hi.raw(), MPFR_RNDU);
  return r;
}
Iv iv_sqrt(const Iv& a) { return {r_sqrt(a.lo, MPFR_RNDD), r_sqrt(a.hi, MPFR_RNDU)}; }
Iv iv_sqr(const Iv& a) { return a * a; }
Iv iv_pow_ui(const Iv& a, unsigned long e) {
  if (mpfr_sgn(a.lo.raw()) < 0) throw std::domain_error("iv_pow_ui of negative interval");
  return {r_pow_ui(a.lo, e, MPFR_RNDD), r_pow_ui(a.hi, e, MPFR_RNDU)};
}
Iv iv_max(const Iv& a, const Iv& b) { return {r_max(a.lo, b.lo), r_max(a.hi, b.hi)}; }
Iv iv_neg(const Iv& a) {
  Real zero;
  return {r_sub(zero, a.hi, MPFR_RNDD), r_sub(zero, a.lo, MPFR_RNDU)};
}

std::optional<int64_t> iv_floor_exact(const Iv& a) {
  int64_t lo = floor_down(a.lo);
  int64_t hi = floor_up(a.hi);
  if (lo != hi) return std::nullopt;
  return lo;
}

int64_t floor_up(const Real& hi) {
  Real f;
  mpfr_floor(f.raw(), hi.raw());
  return mpfr_get_sj(f.raw(), MPFR_RNDN);
}
int64_t floor_down(const Real& lo) {
  Real f;
  mpfr_floor(f.raw(), lo.raw());
  return mpfr_get_sj(f.raw(), MPFR_RNDN);
}

}  // namespace pexeq
