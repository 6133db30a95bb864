#pragma once

// Finite Dirichlet coefficients: the N complex numbers d*_n for which
// sum_n d*_n n^(-s_m) reproduces zeta(s_m) on N grid points s_m.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetalab/precision.hpp"

namespace zetalab {

/// A decimal literal kept verbatim so that grid ordinates like 188.4955592
/// enter the multiprecision grid exactly as written, not via a double.
class Decimal {
 public:
  explicit Decimal(std::string text);
  static Decimal from_double(double value);

  const std::string& text() const noexcept { return text_; }
  double value() const noexcept { return value_; }
  Real to_real(mpfr_prec_t bits) const { return Real(text_, bits); }

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
  double value_;
};

struct GridSpec {
  Decimal sigma{"0.5"};
  Decimal t1{"188.4955592"};
  Decimal dt{"0.628318531"};
  int n_rows = 100;
  int digits = 100;

  /// dt > 0, t1 > 0, n_rows >= 2, digits >= 15; throws InvalidArgument.
  void validate() const;
  double last_ordinate() const { return t1.value() + (n_rows - 1) * dt.value(); }
  /// max(t_m)/pi < N. Violations are allowed but flagged.
  bool ordinate_constraint_ok() const;
  /// (t1 + (N-1) dt / 2) / pi, the mean-ordinate estimate of the half crossing.
  double mean_index() const;
};

/// s_m = sigma + i (t1 + (m-1) dt), m = 1..N.
std::vector<Complex> build_grid(const GridSpec& spec, mpfr_prec_t bits);

/// Dense square complex system, row-major.
class LinearSystem {
 public:
  LinearSystem(std::size_t n, mpfr_prec_t bits);

  std::size_t size() const noexcept { return n_; }
  Complex& at(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  const Complex& at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::vector<Complex>& rhs() noexcept { return rhs_; }
  const std::vector<Complex>& rhs() const noexcept { return rhs_; }

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
  std::vector<Complex> rhs_;
};

/// a_mn = n^(-s_m), b_m = zeta(s_m), both rounded to exactly ctx.digits()
/// digits. Throws NearZeroRow when |zeta(s_m)| < 10^(-P/4).
LinearSystem assemble_system(std::span<const Complex> grid, std::size_t n_cols, const PrecisionContext& ctx,
                             int jobs = 1);

struct CoefficientSet {
  std::optional<GridSpec> grid;
  std::vector<Complex> deltas;
  double residual_inf = 0.0;  // ||A d - b||_inf
  double im_stability = 0.0;  // |sum_n Im d_n|
  int digits = 0;
  bool retried_at_double_precision = false;
};

/// Gaussian elimination with partial pivoting by modulus. One automatic retry
/// at 2P digits when the residual misses 10^(-P/2). Throws SingularMatrix or
/// ResidualTooLarge.
CoefficientSet solve_coefficients(const LinearSystem& system, const PrecisionContext& ctx);

/// build_grid + assemble_system + solve_coefficients for one grid.
CoefficientSet compute_coefficients(const GridSpec& spec, int jobs = 1);

/// max_m |sum_n a_mn d_n - b_m|
double residual_inf(const LinearSystem& system, std::span<const Complex> deltas);

/// |sum_n Im d_n|
double stability_metric(std::span<const Complex> deltas);
inline double stability_metric(const CoefficientSet& cs) { return stability_metric(cs.deltas); }

struct HalfCrossing {
  double n_hat_star = 0.0;  // interpolated 1-based index where Re d_n passes 1/2
  int index = 0;            // 1-based a with Re d_a > 1/2 >= Re d_(a+1)
  int sign_changes = 0;     // sign changes of (Re d_n - 1/2)
  bool multiple_crossings() const noexcept { return sign_changes > 1; }
};

/// First downward crossing of Re d_n through 1/2, by linear interpolation
/// between n = a and n = a + 1. Throws NoCrossing.
HalfCrossing half_crossing(std::span<const Complex> deltas);
inline HalfCrossing half_crossing(const CoefficientSet& cs) { return half_crossing(cs.deltas); }

}  // namespace zetalab
