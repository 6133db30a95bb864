#pragma once

// Reference evaluators for zeta, gamma and chi at arbitrary precision.

#include <cstddef>

#include "zetalab/precision.hpp"

namespace zetalab {

struct OracleResult {
  Complex value;
  int requested_digits = 0;
  long terms_used = 0;       // Euler-Maclaurin cutoff N0
  int correction_order = 0;  // number of Bernoulli correction terms
};

/// B_{2k} rounded to `bits`. The exact rationals are built once per process
/// and shared; concurrent callers never observe a partially built table.
Real bernoulli_even(int k, mpfr_prec_t bits);

/// zeta(s) to ctx.digits() via Euler-Maclaurin with an adaptive cutoff and
/// correction order. Throws Pole at s = 1 and PrecisionUnreachable when no
/// cutoff in the schedule certifies the requested digits.
OracleResult zeta(const Complex& s, const PrecisionContext& ctx);

/// Euler-Maclaurin with a fixed cutoff and number of Bernoulli terms; no
/// adaptivity. Used to cross-check the adaptive schedule.
OracleResult zeta_euler_maclaurin(const Complex& s, const PrecisionContext& ctx, long cutoff, int order);

/// Gamma(s) via upward shift + Stirling series; reflection for Re s < 1/2.
Complex gamma(const Complex& s, const PrecisionContext& ctx);

/// chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s), so that zeta(s) = chi(s) zeta(1 - s).
Complex chi(const Complex& s, const PrecisionContext& ctx);

}  // namespace zetalab
