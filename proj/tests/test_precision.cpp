#include <random>
#include <string>

#include "doctest.h"
#include "zetalab/precision.hpp"

using namespace zetalab;

namespace {

Complex cx(double re, double im, const PrecisionContext& ctx) { return Complex(re, im, ctx.bits()); }

double log10_rel(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  if (d.is_zero()) return -1e9;
  return log10(d / abs(b)).to_double();
}

// One unit in the last place of x at `bits` precision.
Real ulp(const Real& x, mpfr_prec_t bits) {
  return ldexp(Real(1L, bits), x.exponent2() - static_cast<long>(bits));
}

}  // namespace

TEST_CASE("context validates digit budget") {
  CHECK_THROWS_AS(PrecisionContext(14), Error);
  CHECK_THROWS_AS(PrecisionContext(20, -1), Error);
  const PrecisionContext ctx(100);
  CHECK(ctx.payload_bits() == 333);
  CHECK(ctx.bits() > ctx.payload_bits());
}

TEST_CASE("complex field examples") {
  const PrecisionContext ctx(30);
  CHECK(cx(1, 2, ctx) + cx(3, -2, ctx) == cx(4, 0, ctx));
  CHECK(cx(0, 1, ctx) * cx(0, 1, ctx) == cx(-1, 0, ctx));

  const Complex z = cx(2.5, -0.7, ctx);
  CHECK(log10_rel(exp(log(z)), z) < -ctx.digits());
}

TEST_CASE("arithmetic errors") {
  const PrecisionContext ctx(20);
  CHECK_THROWS_AS(cx(1, 1, ctx) / Complex(ctx.bits()), Error);
  CHECK_THROWS_AS(log(Complex(ctx.bits())), Error);
  try {
    (void)log(Complex(ctx.bits()));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LogOfZero);
  }
  CHECK_THROWS_AS(exp(Real(1e300, ctx.bits()) * Real(1e300, ctx.bits())), Error);
  CHECK_THROWS_AS(Real("12x", 64), Error);
}

TEST_CASE("power_term examples") {
  const PrecisionContext ctx(50);
  CHECK(power_term(1, cx(0.3, 77.0, ctx), ctx) == cx(1, 0, ctx));
  CHECK(power_term(2, cx(1, 0, ctx), ctx) == cx(0.5, 0, ctx));

  const PrecisionContext wide(100);
  const Complex s = cx(0.5, 14.0, wide);
  const Complex lo = power_term(2, s, ctx);
  const Complex hi = exp(-(s * log(Real(2L, wide.bits()))));
  CHECK(log10_rel(lo, hi) < -50);
  CHECK_THROWS_AS(power_term(0, s, ctx), Error);
}

TEST_CASE("property: exp(ln z) round-trip on random z") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> log_mod(-3.0, 3.0);
  std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
  for (int digits : {20, 50, 100}) {
    const PrecisionContext ctx(digits);
    for (int i = 0; i < 200; ++i) {
      const double r = std::pow(10.0, log_mod(rng));
      const double a = angle(rng);
      const Complex z = cx(r * std::cos(a), r * std::sin(a), ctx);
      CHECK(log10_rel(exp(log(z)), z) < -digits + 2);
    }
  }
}

TEST_CASE("property: n^-s * n^s = 1") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sigma(-2.0, 3.0);
  std::uniform_real_distribution<double> t(-500.0, 500.0);
  std::uniform_int_distribution<long> n(1, 5000);
  const PrecisionContext ctx(60);
  const Complex one = cx(1, 0, ctx);
  for (int i = 0; i < 200; ++i) {
    const Complex s = cx(sigma(rng), t(rng), ctx);
    const long k = n(rng);
    CHECK(log10_rel(power_term(k, s, ctx) * power_term(k, -s, ctx), one) < -ctx.digits() + 2);
  }
}

TEST_CASE("property: doubling precision reproduces P-digit results within one ulp") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const PrecisionContext ctx(40);
  const PrecisionContext wide = ctx.with_digits(80);
  const mpfr_prec_t p = ctx.payload_bits();
  auto within_ulp = [&](const Complex& lo, const Complex& hi) {
    const Complex a = lo.rounded(p);
    const Complex b = hi.rounded(p);
    return abs(a.re() - b.re()) <= ulp(b.re(), p) && abs(a.im() - b.im()) <= ulp(b.im(), p);
  };
  for (int i = 0; i < 100; ++i) {
    const double re = u(rng), im = u(rng), re2 = u(rng), im2 = u(rng);
    const Complex a = cx(re, im, ctx), b = cx(re2, im2, ctx);
    const Complex aw = cx(re, im, wide), bw = cx(re2, im2, wide);
    CHECK(within_ulp(a * b, aw * bw));
    CHECK(within_ulp(a / b, aw / bw));
    CHECK(within_ulp(exp(a), exp(aw)));
    CHECK(within_ulp(log(a), log(aw)));
    CHECK(within_ulp(sin(a), sin(aw)));
    const long n = 2 + static_cast<long>(i);
    CHECK(within_ulp(power_term(n, a, ctx), power_term(n, aw, wide)));
  }
}

TEST_CASE("conjugate symmetry is exact for the field operations") {
  const PrecisionContext ctx(30);
  const Complex a = cx(0.37, 12.5, ctx), b = cx(-1.25, 0.125, ctx);
  CHECK(conj(a * b) == conj(a) * conj(b));
  CHECK(conj(a / b) == conj(a) / conj(b));
  CHECK(conj(exp(a)) == exp(conj(a)));
  CHECK(conj(log(b)) == log(conj(b)));
  CHECK(conj(power_term(17, a, ctx)) == power_term(17, conj(a), ctx));
}

TEST_CASE("decimal serialization") {
  const PrecisionContext ctx(20);
  CHECK(to_string(cx(1.5, -0.25, ctx), 5) == "1.5000e+0-2.5000e-1i");
  CHECK(to_string(cx(-3, 0, ctx), 3) == "-3.00e+0+0.00e+0i");
  CHECK(to_string(Real(1234.5, 64), 4) == "1.234e+3");

  const Complex parsed = parse_complex("1.5000e+0-2.5000e-1i", ctx.bits());
  CHECK(parsed == cx(1.5, -0.25, ctx));
  CHECK(parse_complex("2.5", ctx.bits()) == cx(2.5, 0, ctx));
  CHECK(parse_complex("-1e-3+4e2i", ctx.bits()) == Complex(Real("-1e-3", ctx.bits()), Real(400L, ctx.bits())));
  CHECK_THROWS_AS(parse_complex("1.0+abci", ctx.bits()), Error);
}

TEST_CASE("property: serialize/parse round-trip at P digits") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int digits : {15, 40, 100}) {
    const PrecisionContext ctx(digits);
    for (int i = 0; i < 50; ++i) {
      const Complex z = exp(cx(u(rng) * 1e-5, u(rng), ctx)) * Real(u(rng), ctx.bits());
      const std::string text = to_string(z, digits);
      CHECK(to_string(parse_complex(text, ctx.bits()), digits) == text);
    }
  }
}
