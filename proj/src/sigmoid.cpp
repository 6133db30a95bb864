#include "zetalab/sigmoid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zetalab {

double sigmoid_eval(double n, double a, double b) {
  const double x = (n - a) / b;
  if (x > 745.0) return 0.0;
  if (x < -745.0) return 1.0;
  // evaluate on the side where exp cannot overflow; keeps s(A+x) + s(A-x) = 1
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double sigmoid_eval(double n, const SigmoidFit& fit) { return sigmoid_eval(n, fit.a_param, fit.b_param); }

double scale_from_formula(double n_hat_star, int n_coeffs) {
  const double radicand = n_hat_star - 2.0 * n_coeffs / std::numbers::pi;
  if (!(radicand > 0.0)) {
    throw Error(ErrorCode::NegativeRadicand, "n_hat_star = " + std::to_string(n_hat_star) + " is not above 2N/pi = " +
                                                 std::to_string(2.0 * n_coeffs / std::numbers::pi));
  }
  return std::sqrt(radicand);
}

double fit_residual(std::span<const Complex> deltas, const SigmoidFit& fit) {
  mpfr_prec_t bits = 64;
  for (const auto& d : deltas) bits = std::max(bits, d.precision());
  Real re(bits), im(bits);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    re += deltas[i].re() - Real(sigmoid_eval(static_cast<double>(i + 1), fit), bits);
    im += deltas[i].im();
  }
  return abs(Complex(re, im)).to_double();
}

SigmoidFit construct_fit(std::span<const Complex> deltas) {
  const HalfCrossing h = half_crossing(deltas);
  SigmoidFit fit;
  fit.a_param = h.n_hat_star;
  fit.b_param = scale_from_formula(h.n_hat_star, static_cast<int>(deltas.size()));
  fit.residual = fit_residual(deltas, fit);
  return fit;
}

SigmoidFit construct_fit(const CoefficientSet& cs) {
  SigmoidFit fit = construct_fit(std::span<const Complex>(cs.deltas));
  fit.source_grid = cs.grid;
  return fit;
}

}  // namespace zetalab
