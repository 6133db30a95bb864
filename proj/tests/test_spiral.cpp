#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zetalab/convergent_series.hpp"
#include "zetalab/spiral.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("raw partial sums") {
  const PrecisionContext ctx(30);
  const Complex s(0.5, 200.0, ctx.bits());
  const Complex c = chi(s, ctx);

  const auto one = raw_partial_sums(s, 1, ctx);
  REQUIRE(one.points.size() == 1);
  CHECK(abs(one.points[0] - (Complex(1.0, 0.0, ctx.bits()) - c)).to_double() < 1e-35);
  CHECK_FALSE(one.weighted);
  CHECK_FALSE(one.b_used.has_value());

  const auto raw = raw_partial_sums(s, 300, ctx);
  for (long n = 1; n <= 300; ++n) {
    CHECK(abs(spiral_term(n, s, c, ctx)).to_double() <= 2.0 / std::sqrt(static_cast<double>(n)) * (1 + 1e-20));
  }
  const long cut = static_cast<long>(std::floor(200.0 / std::numbers::pi));
  const double at_cut = abs(raw.points[static_cast<std::size_t>(cut - 1)]).to_double();
  MESSAGE("raw |S_k| at k=" << cut << ": " << at_cut << ", max after: " << max_modulus_after(raw, cut));
  CHECK(max_modulus_after(raw, cut) > at_cut);

  CHECK(code_of([&] { raw_partial_sums(Complex(0.5, 0.0, 64), 5, ctx); }) == ErrorCode::RealAxis);
  CHECK(code_of([&] { raw_partial_sums(s, 0, ctx); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("unit weights reproduce the raw trace") {
  const PrecisionContext ctx(30);
  const Complex s(0.5, 200.0, ctx.bits());
  const Real one(1L, ctx.bits());
  const auto raw = raw_partial_sums(s, 150, ctx);
  const auto unit = weighted_partial_sums(s, [&](long) { return one; }, 150, ctx);
  CHECK(unit.weighted);
  for (std::size_t k = 0; k < raw.points.size(); ++k) CHECK(unit.points[k] == raw.points[k]);
}

TEST_CASE("weighted spiral at 0.5 + 200i converges") {
  const PrecisionContext ctx(30);
  const Complex s(0.5, 200.0, ctx.bits());
  const auto cal = calibrate_b(s, ctx);
  const long n = default_spiral_terms(s, cal.b_hat, ctx);
  CHECK(n == 2 * truncation_length(s, cal.b_hat, 1e-30));

  const auto weighted = weighted_partial_sums(s, cal.b_hat, n, ctx);
  const auto raw = raw_partial_sums(s, n, ctx);
  REQUIRE(weighted.b_used.has_value());
  const double last = abs(weighted.points.back()).to_double();
  const double residual = functional_residual(s, cal.b_hat, n, ctx);
  MESSAGE("b_hat=" << cal.b_hat << " residual=" << residual);
  CHECK(residual == last);
  CHECK(residual < 1e-2);

  const long cut = static_cast<long>(std::ceil(200.0 / std::numbers::pi));
  CHECK(max_modulus_after(weighted, cut) < max_modulus_after(raw, cut));

  // triangle bound through the mirrored point 1 - s
  const Complex mirror = Complex(1.0, 0.0, ctx.bits()) - s;
  const double mirrored = abs(zeta(mirror, ctx).value - weighted_zeta(mirror, cal.b_hat, n, ctx)).to_double();
  CHECK(residual <= 10.0 * (cal.err_at_opt + mirrored));
}

TEST_CASE("prefix of the weighted trace follows the raw trace") {
  // deep in the left tail the weights are 1 to ~exp(-t/(2 pi B))
  const PrecisionContext ctx(30);
  const Complex s(0.5, 1000.0, ctx.bits());
  const long prefix = static_cast<long>(std::floor(1000.0 / (2.0 * std::numbers::pi)));
  const auto raw = raw_partial_sums(s, prefix, ctx);
  const auto weighted = weighted_partial_sums(s, 4.05968, prefix, ctx);
  for (std::size_t k = 0; k < raw.points.size(); ++k) CHECK(abs(raw.points[k] - weighted.points[k]).to_double() < 1e-10);
}

TEST_CASE("off the critical line the residual is the weighted error alone") {
  const PrecisionContext ctx(30);
  const Complex s(0.3, 200.0, ctx.bits());
  const Complex one(1.0, 0.0, ctx.bits());
  const double oracle = abs(zeta(s, ctx).value - chi(s, ctx) * zeta(one - s, ctx).value).to_double();
  CHECK(oracle < 1e-27);
  const auto cal = calibrate_b(s, ctx);
  const double residual = functional_residual(s, cal.b_hat, default_spiral_terms(s, cal.b_hat, ctx), ctx);
  MESSAGE("sigma=0.3 t=200 b_hat=" << cal.b_hat << " residual=" << residual << " oracle=" << oracle);
  CHECK(std::isfinite(residual));
  CHECK(residual > oracle);
}

TEST_CASE("property: point differences are the terms") {
  const PrecisionContext ctx(40);
  for (const Complex& s : {Complex(0.5, 200.0, ctx.bits()), Complex(0.2, -75.5, ctx.bits())}) {
    const Complex c = chi(s, ctx);
    const auto raw = raw_partial_sums(s, 120, ctx);
    const auto w = weighted_partial_sums(s, 2.0, 120, ctx);
    for (long k = 2; k <= 120; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      const Complex term = spiral_term(k, s, c, ctx);
      CHECK(abs(raw.points[i] - raw.points[i - 1] - term).to_double() < 1e-36);
      const Complex wterm = term * generalized_delta(k, s, Real(2.0, ctx.bits()));
      CHECK(abs(w.points[i] - w.points[i - 1] - wterm).to_double() < 1e-36);
    }
  }
}
