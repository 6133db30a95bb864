#pragma once

// Test-only reference computations, independent of the library code paths
// they check.

#include <gmpxx.h>

#include <cmath>
#include <vector>

#include "zetalab/precision.hpp"

namespace zetalab::testing {

/// zeta(s) = eta(s) / (1 - 2^(1-s)) with eta summed by Borwein's accelerated
/// alternating series. Shares only the arithmetic primitives with the library.
inline Complex zeta_via_eta(const Complex& s, int digits) {
  const double t = std::fabs(s.im().to_double());
  // error ~ (3+sqrt 8)^-n * e^(pi t / 2)
  const int n = static_cast<int>(std::ceil((digits + 10 + 0.6822 * t) / 0.7655513));
  const mpfr_prec_t bits = digits_to_bits(digits + 20) + static_cast<mpfr_prec_t>(std::ceil(2.3 * t));
  const Complex z = s.rounded(bits);

  std::vector<mpq_class> d(static_cast<std::size_t>(n) + 1);
  mpq_class acc = 0;
  for (int i = 0; i <= n; ++i) {
    // n (n+i-1)! 4^i / ((n-i)! (2i)!)
    mpz_class num, den, f;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n + i - 1));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(n - i));
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(2 * i));
    den *= f;
    mpz_class four;
    mpz_ui_pow_ui(four.get_mpz_t(), 4, static_cast<unsigned long>(i));
    mpq_class q{mpz_class(n * num * four), den};
    q.canonicalize();
    acc += q;
    d[static_cast<std::size_t>(i)] = acc;
  }
  const mpq_class& dn = d[static_cast<std::size_t>(n)];
  Complex sum(bits);
  for (int k = 0; k < n; ++k) {
    Real w(bits);
    mpq_class diff = d[static_cast<std::size_t>(k)] - dn;
    mpfr_set_q(w.get(), diff.get_mpq_t(), MPFR_RNDN);
    Complex term = pow(Real(static_cast<long>(k + 1), bits), -z) * w;
    if (k % 2 == 0) sum += term; else sum -= term;
  }
  Real dnr(bits);
  mpfr_set_q(dnr.get(), dn.get_mpq_t(), MPFR_RNDN);
  Complex eta = sum * (Real(-1L, bits) / dnr);
  const Real one(1L, bits);
  Complex denom = Complex(one) - pow(Real(2L, bits), Complex(one) - z);
  return eta / denom;
}

/// |a - b| / max(1, |b|) as a double log10, clamped for exact agreement.
inline double log10_rel_error(const Complex& a, const Complex& b) {
  Real diff = abs(a - b);
  if (diff.is_zero()) return -1e9;
  Real scale = abs(b);
  const Real one(1L, scale.precision());
  if (scale < one) scale = one;
  return log10(diff / scale).to_double();
}

}  // namespace zetalab::testing
