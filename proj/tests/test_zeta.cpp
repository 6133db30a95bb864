#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using zetalab::testing::log10_rel_error;

namespace {

Complex cx(double re, double im, const PrecisionContext& ctx) { return Complex(re, im, ctx.bits()); }
Complex cxs(const char* re, const char* im, const PrecisionContext& ctx) {
  return Complex(Real(re, ctx.bits()), Real(im, ctx.bits()));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli_even(0, 64) == Real(1L, 64));
  CHECK(bernoulli_even(1, 200) == Real(1L, 200) / Real(6L, 200));
  CHECK(bernoulli_even(2, 200) == Real(-1L, 200) / Real(30L, 200));
  CHECK(bernoulli_even(6, 200) == Real(-691L, 200) / Real(2730L, 200));
  CHECK(bernoulli_even(7, 200) == Real(7L, 200) / Real(6L, 200));
}

TEST_CASE("Bernoulli cache tolerates concurrent growth") {
  std::vector<std::thread> threads;
  std::vector<double> values(8);
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([i, &values] { values[static_cast<std::size_t>(i)] = bernoulli_even(40 + 25 * i, 128).to_double(); });
  }
  for (auto& th : threads) th.join();
  for (int i = 0; i < 8; ++i) CHECK(values[static_cast<std::size_t>(i)] == bernoulli_even(40 + 25 * i, 128).to_double());
}

TEST_CASE("zeta(2) = pi^2/6 to 100 digits") {
  const PrecisionContext ctx(100);
  const auto r = zeta(cx(2, 0, ctx), ctx);
  const Real pi = Real::pi(ctx.bits());
  const Complex expected(pi * pi / Real(6L, ctx.bits()));
  CHECK(log10_rel_error(r.value, expected) < -100);
  CHECK(r.requested_digits == 100);
  CHECK(r.terms_used >= 130);
  CHECK(r.correction_order > 0);
}

TEST_CASE("zeta(1/2) against the alternating-series oracle") {
  const PrecisionContext ctx(60);
  const Complex s = cx(0.5, 0, ctx);
  const auto r = zeta(s, ctx);
  const Complex oracle = zetalab::testing::zeta_via_eta(s, 70);
  CHECK(log10_rel_error(r.value, oracle) < -60);
  CHECK(to_string(r.value.re(), 11) == "-1.4603545088e+0");
}

TEST_CASE("first nontrivial zero") {
  const PrecisionContext ctx(40);
  const Complex s = cxs("0.5", "14.134725141734", ctx);
  const auto r = zeta(s, ctx);
  CHECK(abs(r.value).to_double() < 1e-10);
  CHECK(abs(zetalab::testing::zeta_via_eta(s, 40)).to_double() < 1e-10);
}

TEST_CASE("zeta agrees with the alternating-series oracle across the strip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sigma(0.01, 0.99);
  std::uniform_real_distribution<double> t(-60.0, 60.0);
  const PrecisionContext ctx(50);
  for (int i = 0; i < 12; ++i) {
    const Complex s = cx(sigma(rng), t(rng), ctx);
    CHECK(log10_rel_error(zeta(s, ctx).value, zetalab::testing::zeta_via_eta(s, 60)) < -50);
  }
}

TEST_CASE("zeta outside the strip") {
  const PrecisionContext ctx(40);
  // zeta(-1) = -1/12, zeta(0) = -1/2
  const Complex m1 = zeta(cx(-1, 0, ctx), ctx).value;
  CHECK(log10_rel_error(m1, Complex(Real(-1L, ctx.bits()) / Real(12L, ctx.bits()))) < -40);
  CHECK(log10_rel_error(zeta(cx(0, 0, ctx), ctx).value, cx(-0.5, 0, ctx)) < -40);
  const Complex s = cx(3.5, -7.25, ctx);
  CHECK(log10_rel_error(zeta(s, ctx).value, zetalab::testing::zeta_via_eta(s, 50)) < -40);
}

TEST_CASE("zeta errors") {
  const PrecisionContext ctx(20);
  CHECK(code_of([&] { zeta(cx(1, 0, ctx), ctx); }) == ErrorCode::Pole);
  CHECK(code_of([&] { zeta_euler_maclaurin(cx(1, 0, ctx), ctx, 10, 2); }) == ErrorCode::Pole);
}

TEST_CASE("Euler-Maclaurin cutoff and order schedules agree") {
  const PrecisionContext ctx(50);
  for (const Complex& s : {cx(0.5, 100.0, ctx), cx(0.2, -37.5, ctx), cx(2.0, 5.0, ctx)}) {
    const auto adaptive = zeta(s, ctx);
    const auto doubled = zeta_euler_maclaurin(s, ctx, 2 * adaptive.terms_used, adaptive.correction_order + 2);
    CHECK(log10_rel_error(adaptive.value, doubled.value) < -50);
  }
}

TEST_CASE("zeta is exactly conjugate-symmetric") {
  const PrecisionContext ctx(40);
  for (const Complex& s : {cx(0.5, 123.25, ctx), cx(0.7, 31.0, ctx), cx(-0.4, 8.5, ctx)}) {
    CHECK(zeta(conj(s), ctx).value == conj(zeta(s, ctx).value));
  }
}

TEST_CASE("gamma examples") {
  const PrecisionContext ctx(60);
  CHECK(log10_rel_error(gamma(cx(5, 0, ctx), ctx), cx(24, 0, ctx)) < -60);
  const Complex root_pi(sqrt(Real::pi(ctx.bits())));
  CHECK(log10_rel_error(gamma(cx(0.5, 0, ctx), ctx), root_pi) < -60);

  const Complex z = cx(0.3, 2.0, ctx);
  const Complex one = cx(1, 0, ctx);
  const Complex pi(Real::pi(ctx.bits()));
  const Complex lhs = gamma(z, ctx) * gamma(one - z, ctx);
  CHECK(log10_rel_error(lhs, pi / sin(pi * z)) < -(ctx.digits() - 2));

  // Gamma(-2.5) = -8 sqrt(pi) / 15
  const Complex neg(Real(-8L, ctx.bits()) * sqrt(Real::pi(ctx.bits())) / Real(15L, ctx.bits()));
  CHECK(log10_rel_error(gamma(cx(-2.5, 0, ctx), ctx), neg) < -58);
}

TEST_CASE("gamma poles") {
  const PrecisionContext ctx(20);
  CHECK(code_of([&] { gamma(cx(0, 0, ctx), ctx); }) == ErrorCode::Pole);
  CHECK(code_of([&] { gamma(cx(-3, 0, ctx), ctx); }) == ErrorCode::Pole);
}

TEST_CASE("chi examples") {
  const PrecisionContext ctx(50);
  const Complex one = cx(1, 0, ctx);
  CHECK(std::abs(abs(chi(cx(0.5, 50.0, ctx), ctx)).to_double() - 1.0) < 1e-40);
  CHECK(log10_rel_error(abs(chi(cx(0.5, 50.0, ctx), ctx)) * one, one) < -(ctx.digits() - 2));

  const Complex s = cx(0.3, 20.0, ctx);
  CHECK(log10_rel_error(chi(s, ctx) * chi(one - s, ctx), one) < -(ctx.digits() - 2));

  const Complex s2 = cx(0.4, 30.0, ctx);
  const Complex lhs = zeta(s2, ctx).value;
  const Complex rhs = chi(s2, ctx) * zeta(one - s2, ctx).value;
  CHECK(abs(lhs - rhs) < Real("1e-46", ctx.bits()));
}

TEST_CASE("chi alternative product form") {
  // chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2)
  const PrecisionContext ctx(40);
  const Complex s = cx(0.25, 77.0, ctx);
  const Complex half = cx(0.5, 0, ctx);
  const Complex one = cx(1, 0, ctx);
  const Complex alt = pow(Real::pi(ctx.bits()), s - half) * gamma((one - s) * half.re(), ctx) / gamma(s * half.re(), ctx);
  CHECK(log10_rel_error(chi(s, ctx), alt) < -(ctx.digits() - 2));
}

TEST_CASE("chi degeneracies") {
  const PrecisionContext ctx(20);
  CHECK(code_of([&] { chi(cx(1, 0, ctx), ctx); }) == ErrorCode::Pole);
  CHECK(code_of([&] { chi(cx(2, 0, ctx), ctx); }) == ErrorCode::Pole);
  CHECK(code_of([&] { chi(cx(-2, 0, ctx), ctx); }) == ErrorCode::Degenerate);
  CHECK_NOTHROW(chi(cx(-1, 0, ctx), ctx));
}

TEST_CASE("property: functional equation on random points of the strip") {
  std::mt19937_64 rng(20261018);
  std::uniform_real_distribution<double> sigma(0.001, 0.999);
  std::uniform_real_distribution<double> t(10.0, 200.0);
  const PrecisionContext ctx(50);
  const Complex one = cx(1, 0, ctx);
  for (int i = 0; i < 100; ++i) {
    const Complex s = cx(sigma(rng), t(rng), ctx);
    const Complex z = zeta(s, ctx).value;
    const Complex residual = z - chi(s, ctx) * zeta(one - s, ctx).value;
    CHECK(log10(abs(residual) / abs(z)).to_double() < -(ctx.digits() - 4));
  }
}
