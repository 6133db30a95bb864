#pragma once

// Sigmoid-weighted Dirichlet series sum_n d_n(s) n^(-s), which converges in the
// critical strip, and the per-s calibration of its scale factor B.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/precision.hpp"

namespace zetalab {

/// d_n(s) = 1 / (1 + exp((n - |t|/pi) / b)). Throws RealAxis or NonPositiveScale.
Real generalized_delta(long n, const Complex& s, const Real& b);
double generalized_delta(long n, const Complex& s, double b);

/// Smallest N >= ceil(|t|/pi) + 1 with d_N(s) N^(-sigma) < tail_eps.
long truncation_length(const Complex& s, double b, double tail_eps);

/// sum_{n=1..n_terms} d_n(s) n^(-s), increasing n, at ctx precision.
Complex weighted_zeta(const Complex& s, double b, long n_terms, const PrecisionContext& ctx);
/// Same sum with arbitrary real weights w(n).
Complex weighted_dirichlet_sum(const Complex& s, const std::function<Real(long)>& weight, long n_terms,
                               const PrecisionContext& ctx);

struct BSample {
  double b = 0.0;
  double err = 0.0;
};

struct BCalibration {
  Complex s{64};
  double b_hat = 0.0;
  double err_at_opt = 0.0;     // |zeta(s) - weighted sum| at b_hat
  double digits_gained = 0.0;  // log10(1/err_at_opt)
  std::vector<BSample> trace;  // coarse scan first, then the refinement probes
  std::size_t scan_samples = 0;
  long terms = 0;              // truncation used at b_hat
  int working_digits = 0;      // precision the accepted calibration ran at
};

struct CalibrationOptions {
  double bracket_lo = 0.1;
  double bracket_hi = 100.0;
  int scan_samples = 64;
  double rel_tol = 1e-6;
  std::optional<double> tail_eps;  // default 10^-P
  // Rerun at doubled precision when the error reaches the numerical floor.
  bool escalate = true;
  int max_digits = 240;
};

/// Log scan of the bracket, then golden section on the best cell. Throws
/// NoInteriorMinimum when the scan minimum sits on a bracket end.
BCalibration calibrate_b(const Complex& s, const PrecisionContext& ctx, const CalibrationOptions& opts = {});

struct ProfilePoint {
  double t = 0.0;
  std::optional<BCalibration> calibration;
  std::optional<ErrorCode> error_code;
  std::string error;
  bool ok() const noexcept { return calibration.has_value(); }
};

/// One calibration per t at sigma + i t. Failed points are marked, not fatal.
/// Output order follows t_values whatever the job count.
std::vector<ProfilePoint> accuracy_profile(double sigma, const std::vector<double>& t_values,
                                           const PrecisionContext& ctx, const CalibrationOptions& opts = {},
                                           int jobs = 1);

struct ScalingFit {
  double sigma = 0.0;
  double c_coef = 0.0;  // B = C t^D
  double d_exp = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> samples;
};

/// OLS of ln B on ln t. Needs two or more positive samples with distinct t.
ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& samples, double sigma = 0.0);

struct ExponentialFit {
  double p = 0.0;  // ln v = p + q sigma
  double q = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> samples;
};

/// OLS of ln v on sigma. Needs three or more samples.
ExponentialFit fit_sigma_dependence(const std::vector<std::pair<double, double>>& samples);

}  // namespace zetalab
