#pragma once

#include <gmpxx.h>

#include <optional>

namespace pexeq {

/// Exact Gaussian integer re + im*i.
struct GaussInt {
  mpz_class re, im;

  GaussInt conj() const { return {re, -im}; }
  mpz_class norm() const { return re * re + im * im; }
  bool operator==(const GaussInt& o) const = default;
};

GaussInt gauss_mul(const GaussInt& a, const GaussInt& b);

// binary powering; when mod is given both coordinates are reduced mod it
GaussInt gauss_pow(const GaussInt& base, unsigned long e,
                   const std::optional<mpz_class>& mod = std::nullopt);

GaussInt gauss_reduce(const GaussInt& a, const mpz_class& mod);

}  // namespace pexeq
