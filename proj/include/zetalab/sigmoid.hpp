#pragma once

// Two-parameter sigmoid model of the finite Dirichlet coefficients:
// d_n ~ 1 / (1 + exp((n - A) / B)).

#include <optional>
#include <span>

#include "zetalab/coeff_solver.hpp"

namespace zetalab {

struct SigmoidFit {
  double a_param = 0.0;  // center A
  double b_param = 1.0;  // scale B > 0
  double residual = 0.0;
  std::optional<GridSpec> source_grid;
};

/// 1 / (1 + exp((n - A)/B)), saturating to 0 or 1 instead of overflowing.
double sigmoid_eval(double n, const SigmoidFit& fit);
double sigmoid_eval(double n, double a, double b);

/// B = sqrt(n_hat_star - 2N/pi). Throws NegativeRadicand when the radicand is <= 0.
double scale_from_formula(double n_hat_star, int n_coeffs);

/// |sum_n (d_n - sigmoid(n))| with the sigmoid taken as real. Signed sum, so
/// offsets of opposite sign cancel.
double fit_residual(std::span<const Complex> deltas, const SigmoidFit& fit);
inline double fit_residual(const CoefficientSet& cs, const SigmoidFit& fit) { return fit_residual(cs.deltas, fit); }

/// A = interpolated half crossing, B from scale_from_formula, residual filled in.
SigmoidFit construct_fit(std::span<const Complex> deltas);
SigmoidFit construct_fit(const CoefficientSet& cs);

}  // namespace zetalab
