#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>

namespace pexeq {

// High-precision real with explicit rounding direction. All soundness-gating
// comparisons in the bound evaluators go through the interval type below so
// that a "certain" verdict never depends on rounding luck.

inline constexpr mpfr_prec_t kRealPrec = 192;

class Real {
 public:
  Real() { mpfr_init2(v_, kRealPrec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, kRealPrec); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

  static Real of(long x) { Real r; mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
  static Real of(double x) { Real r; mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
  static Real of(const mpz_class& x) { Real r; mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN); return r; }
  // q = n/d rounded in the requested direction
  static Real ratio(long n, long d, mpfr_rnd_t rnd) {
    Real r;
    mpfr_set_si(r.v_, n, rnd);
    mpfr_div_si(r.v_, r.v_, d, rnd);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double d() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
  bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
  bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }
  bool operator>=(const Real& o) const { return mpfr_cmp(v_, o.v_) >= 0; }

  std::string str(int digits = 20) const;

 private:
  mpfr_t v_;
};

// Directed building blocks.
Real r_add(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real r_sub(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real r_mul(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real r_div(const Real& a, const Real& b, mpfr_rnd_t rnd);
Real r_log(const Real& a, mpfr_rnd_t rnd);
Real r_log_z(const mpz_class& a, mpfr_rnd_t rnd);
Real r_log_si(long a, mpfr_rnd_t rnd);
Real r_sqrt(const Real& a, mpfr_rnd_t rnd);
Real r_sqr(const Real& a, mpfr_rnd_t rnd);
Real r_pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd);
Real r_max(const Real& a, const Real& b);

// Closed interval [lo, hi] enclosing an exact real value. Operations widen
// outward; comparisons report three-way certainty.
struct Iv {
  Real lo, hi;

  static Iv exact_si(long x) { return {Real::of(x), Real::of(x)}; }
  static Iv exact_z(const mpz_class& x);
  static Iv rational(long n, long d) { return {Real::ratio(n, d, MPFR_RNDD), Real::ratio(n, d, MPFR_RNDU)}; }

  Iv operator+(const Iv& o) const { return {r_add(lo, o.lo, MPFR_RNDD), r_add(hi, o.hi, MPFR_RNDU)}; }
  Iv operator-(const Iv& o) const { return {r_sub(lo, o.hi, MPFR_RNDD), r_sub(hi, o.lo, MPFR_RNDU)}; }
  Iv operator*(const Iv& o) const;
  Iv operator/(const Iv& o) const;  // o must not contain 0

  // True iff the whole interval is strictly below / above the other.
  bool certainly_lt(const Iv& o) const { return hi < o.lo; }
  bool certainly_gt(const Iv& o) const { return lo > o.hi; }

  double mid() const { return (lo.d() + hi.d()) / 2; }
};

Iv iv_log(const Iv& a);                 // requires a.lo > 0
Iv iv_log_z(const mpz_class& a);        // a >= 1
Iv iv_log_si(long a);
Iv iv_exp(const Iv& a);
Iv iv_pi();
Iv iv_sqrt(const Iv& a);
Iv iv_sqr(const Iv& a);
Iv iv_pow_ui(const Iv& a, unsigned long e);  // a.lo >= 0
Iv iv_max(const Iv& a, const Iv& b);
Iv iv_neg(const Iv& a);

// floor over the whole interval; nullopt when the endpoints floor differently
// (the caller treats a straddling floor as an uncertain computation).
std::optional<int64_t> iv_floor_exact(const Iv& a);
int64_t floor_up(const Real& hi);    // floor of the upper endpoint
int64_t floor_down(const Real& lo);  // floor of the lower endpoint

}  // namespace pexeq
