#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "zetalab/sigmoid.hpp"

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

std::vector<Complex> sampled(double a, double b, int n) {
  std::vector<Complex> out;
  for (int i = 1; i <= n; ++i) out.emplace_back(sigmoid_eval(i, a, b), 0.0, 128);
  return out;
}

}  // namespace

TEST_CASE("sigmoid_eval examples") {
  const SigmoidFit fit{70.0, 2.0, 0.0, std::nullopt};
  CHECK(sigmoid_eval(70.0, fit) == 0.5);
  CHECK(sigmoid_eval(72.0, fit) == doctest::Approx(1.0 / (1.0 + std::numbers::e)).epsilon(1e-15));
  CHECK(sigmoid_eval(72.0, fit) == doctest::Approx(0.2689414).epsilon(1e-7));
  CHECK(sigmoid_eval(-1e300, fit) == 1.0);
  CHECK(sigmoid_eval(1e300, fit) == 0.0);
  CHECK(sigmoid_eval(70.0 + 2000.0, fit) == 0.0);
}

TEST_CASE("scale_from_formula") {
  CHECK(scale_from_formula(69.9, 100) == doctest::Approx(std::sqrt(69.9 - 200.0 / std::numbers::pi)));
  CHECK(scale_from_formula(69.9, 100) == doctest::Approx(2.498).epsilon(1e-3));
  CHECK(code_of([] { scale_from_formula(60.0, 100); }) == ErrorCode::NegativeRadicand);
  CHECK(code_of([] { scale_from_formula(200.0 / std::numbers::pi, 100); }) == ErrorCode::NegativeRadicand);
}

TEST_CASE("fit_residual is a signed sum") {
  const SigmoidFit fit{5.0, 1.5, 0.0, std::nullopt};
  auto d = sampled(5.0, 1.5, 10);
  CHECK(fit_residual(d, fit) < 1e-15);
  d[2] = d[2] + Complex(0.25, 0.0, 128);
  d[7] = d[7] - Complex(0.25, 0.0, 128);
  CHECK(fit_residual(d, fit) < 1e-15);
  d[4] = d[4] + Complex(0.0, 0.125, 128);
  CHECK(fit_residual(d, fit) == doctest::Approx(0.125));
}

TEST_CASE("construct_fit recovers a synthetic sigmoid") {
  const auto d = sampled(70.0, 2.5, 100);
  const auto fit = construct_fit(d);
  CHECK(std::abs(fit.a_param - 70.0) < 0.01);
  CHECK(std::abs(fit.b_param - 2.5) < 0.05);
  CHECK(std::isfinite(fit.residual));
  CHECK(sigmoid_eval(fit.a_param, fit) == 0.5);
}

TEST_CASE("construct_fit errors") {
  std::vector<Complex> rising;
  for (int i = 0; i < 10; ++i) rising.emplace_back(0.1 * i, 0.0, 64);
  CHECK(code_of([&] { construct_fit(rising); }) == ErrorCode::NoCrossing);
  // crossing at 3.5 with 100 coefficients sits far below 2N/pi
  CHECK(code_of([] { construct_fit(sampled(3.5, 1.0, 100)); }) == ErrorCode::NegativeRadicand);
}

TEST_CASE("property: symmetry and monotonicity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> a(-100.0, 100.0), b(0.05, 50.0), x(0.0, 200.0);
  for (int i = 0; i < 1000; ++i) {
    const SigmoidFit fit{a(rng), b(rng), 0.0, std::nullopt};
    const double dx = x(rng);
    CHECK(sigmoid_eval(fit.a_param + dx, fit) + sigmoid_eval(fit.a_param - dx, fit) == doctest::Approx(1.0).epsilon(1e-15));
    const double n = fit.a_param + x(rng) / 40.0 - 2.5;
    const double lo = sigmoid_eval(n, fit), hi = sigmoid_eval(n + 0.1 * fit.b_param, fit);
    CHECK(hi < lo);
  }
}

TEST_CASE("property: round trip over centers and scales") {
  for (double a : {64.5, 66.5, 70.0, 75.25, 81.0}) {
    for (double b : {1.0, 2.0, 3.5}) {
      const auto fit = construct_fit(sampled(a, b, 100));
      // linear interpolation error of the crossing scales like 1/B^2
      CHECK(std::abs(fit.a_param - a) < 0.05 / (b * b));
    }
  }
}

TEST_CASE("default grid: finite fit, and a deformed grid fits worse") {
  const auto stable = compute_coefficients(GridSpec{}, 4);
  const auto fit = construct_fit(stable);
  MESSAGE("stable grid A=" << fit.a_param << " B=" << fit.b_param << " residual=" << fit.residual);
  REQUIRE(fit.source_grid.has_value());
  CHECK(std::isfinite(fit.residual));
  CHECK(fit.a_param == doctest::Approx(69.79).epsilon(1e-3));

  GridSpec left;
  left.t1 = Decimal("157.0796327");
  left.dt = Decimal("0.785398163");
  const auto offset = construct_fit(compute_coefficients(left, 4));
  MESSAGE("left grid A=" << offset.a_param << " B=" << offset.b_param << " residual=" << offset.residual);
  CHECK(offset.residual >= 10.0 * fit.residual);
}
