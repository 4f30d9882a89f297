#include "pexeq/gauss.hpp"

namespace pexeq {

GaussInt gauss_mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt gauss_reduce(const GaussInt& a, const mpz_class& mod) {
  GaussInt r;
  mpz_fdiv_r(r.re.get_mpz_t(), a.re.get_mpz_t(), mod.get_mpz_t());
  mpz_fdiv_r(r.im.get_mpz_t(), a.im.get_mpz_t(), mod.get_mpz_t());
  return r;
}

GaussInt gauss_pow(const GaussInt& base, unsigned long e, const std::optional<mpz_class>& mod) {
  GaussInt acc{1, 0};
  GaussInt b = base;
  if (mod) b = gauss_reduce(b, *mod);
  while (e) {
    if (e & 1) {
      acc = gauss_mul(acc, b);
      if (mod) acc = gauss_reduce(acc, *mod);
    }
    e >>= 1;
    if (e) {
      b = gauss_mul(b, b);
      if (mod) b = gauss_reduce(b, *mod);
    }
  }
  return acc;
}

}  // namespace pexeq
