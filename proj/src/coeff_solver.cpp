#include "zetalab/coeff_solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <thread>

#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

// 10^e at `bits`
Real pow10(double e, mpfr_prec_t bits) {
  Real r(bits);
  Real ten(10L, bits);
  Real ex(e, bits);
  mpfr_pow(r.get(), ten.get(), ex.get(), MPFR_RNDN);
  return r;
}

void solve_in_place(std::vector<Complex>& a, std::vector<Complex>& b, std::size_t n, const Real& pivot_floor_sq) {
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    Real best_norm = norm(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real v = norm(a[i * n + k]);
      if (v > best_norm) {
        best_norm = std::move(v);
        best = i;
      }
    }
    if (best_norm < pivot_floor_sq) {
      throw Error(ErrorCode::SingularMatrix, "pivot modulus below floor at column " + std::to_string(k + 1));
    }
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[best * n + j]);
      std::swap(b[k], b[best]);
    }
    const Complex& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i * n + k].is_zero()) continue;
      const Complex factor = a[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= factor * a[k * n + j];
      b[i] -= factor * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a[k * n + j] * b[j];
    b[k] = acc / a[k * n + k];
  }
}

std::vector<Complex> eliminate(const LinearSystem& system, mpfr_prec_t bits, const Real& pivot_floor_sq) {
  const std::size_t n = system.size();
  std::vector<Complex> a;
  a.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.push_back(system.at(i, j).rounded(bits));
  }
  std::vector<Complex> b;
  b.reserve(n);
  for (const auto& v : system.rhs()) b.push_back(v.rounded(bits));
  solve_in_place(a, b, n, pivot_floor_sq);
  return b;
}

}  // namespace

Decimal::Decimal(std::string text) : text_(std::move(text)) {
  const auto* first = text_.data();
  const auto* last = text_.data() + text_.size();
  auto [ptr, ec] = std::from_chars(first, last, value_);
  if (text_.empty() || ec != std::errc() || ptr != last || !std::isfinite(value_)) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + text_ + "'");
  }
}

Decimal Decimal::from_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return Decimal(std::string(buf, ptr));
}

void GridSpec::validate() const {
  if (!(dt.value() > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step dt must be positive");
  if (!(t1.value() > 0.0)) throw Error(ErrorCode::InvalidArgument, "first ordinate t1 must be positive");
  if (n_rows < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 rows");
  if (digits < PrecisionContext::kMinDigits) throw Error(ErrorCode::InvalidArgument, "digits must be >= 15");
}

bool GridSpec::ordinate_constraint_ok() const { return last_ordinate() / std::numbers::pi < n_rows; }

double GridSpec::mean_index() const { return (t1.value() + (n_rows - 1) * dt.value() / 2.0) / std::numbers::pi; }

std::vector<Complex> build_grid(const GridSpec& spec, mpfr_prec_t bits) {
  if (spec.n_rows < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one row");
  const Real sigma = spec.sigma.to_real(bits);
  const Real t1 = spec.t1.to_real(bits);
  const Real dt = spec.dt.to_real(bits);
  std::vector<Complex> grid;
  grid.reserve(static_cast<std::size_t>(spec.n_rows));
  for (int m = 0; m < spec.n_rows; ++m) grid.emplace_back(sigma, t1 + dt * Real(static_cast<long>(m), bits));
  return grid;
}

LinearSystem::LinearSystem(std::size_t n, mpfr_prec_t bits)
    : n_(n), entries_(n * n, Complex(bits)), rhs_(n, Complex(bits)) {}

LinearSystem assemble_system(std::span<const Complex> grid, std::size_t n_cols, const PrecisionContext& ctx, int jobs) {
  if (grid.size() != n_cols) {
    throw Error(ErrorCode::InvalidArgument, "system must be square: " + std::to_string(grid.size()) + " rows, " +
                                                std::to_string(n_cols) + " unknowns");
  }
  const std::size_t n = n_cols;
  const mpfr_prec_t payload = ctx.payload_bits();
  LinearSystem system(n, payload);
  const Real floor = pow10(-ctx.digits() / 4.0, ctx.bits());

  auto fill_rows = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t m = begin; m < n; m += stride) {
      const Complex& s = grid[m];
      const Complex z = zeta(s, ctx).value;
      if (abs(z) < floor) {
        throw Error(ErrorCode::NearZeroRow, "|zeta(s_" + std::to_string(m + 1) + ")| below 10^(-P/4) at s = " +
                                                to_string(s, 17) + "; perturb the grid");
      }
      system.rhs()[m] = z.rounded(payload);
      for (std::size_t c = 0; c < n; ++c) {
        system.at(m, c) = power_term(static_cast<long>(c + 1), s, ctx).rounded(payload);
      }
    }
  };

  const std::size_t workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fill_rows(0, 1);
    return system;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fill_rows(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return system;
}

double residual_inf(const LinearSystem& system, std::span<const Complex> deltas) {
  const std::size_t n = system.size();
  if (deltas.size() != n) throw Error(ErrorCode::InvalidArgument, "coefficient count does not match system size");
  const mpfr_prec_t bits = std::max(system.rhs().empty() ? 64 : system.rhs()[0].precision(),
                                    deltas.empty() ? 64 : deltas[0].precision()) + 64;
  Real worst(bits);
  for (std::size_t m = 0; m < n; ++m) {
    Complex acc = -system.rhs()[m].rounded(bits);
    for (std::size_t c = 0; c < n; ++c) acc += system.at(m, c) * deltas[c];
    Real r = abs(acc);
    if (r > worst) worst = std::move(r);
  }
  return worst.to_double();
}

CoefficientSet solve_coefficients(const LinearSystem& system, const PrecisionContext& ctx) {
  const std::size_t n = system.size();
  if (n == 0 || system.rhs().size() != n) throw Error(ErrorCode::InvalidArgument, "empty or mismatched system");

  const double accept = std::pow(10.0, -ctx.digits() / 2.0);
  auto attempt = [&](const PrecisionContext& work) {
    const Real floor = pow10(-work.digits() + 5.0, work.bits());
    return eliminate(system, work.bits(), floor * floor);
  };

  CoefficientSet cs;
  cs.digits = ctx.digits();
  cs.deltas = attempt(ctx);
  cs.residual_inf = residual_inf(system, cs.deltas);
  if (!(cs.residual_inf < accept)) {
    // Kept at the wider precision: rounding back to P digits would restore the
    // representation error that triggered the retry.
    cs.deltas = attempt(ctx.with_digits(2 * ctx.digits()));
    cs.residual_inf = residual_inf(system, cs.deltas);
    cs.retried_at_double_precision = true;
    if (!(cs.residual_inf < accept)) {
      throw Error(ErrorCode::ResidualTooLarge, "residual " + std::to_string(cs.residual_inf) +
                                                   " exceeds 10^(-P/2) after the 2P retry");
    }
  }
  cs.im_stability = stability_metric(cs.deltas);
  return cs;
}

CoefficientSet compute_coefficients(const GridSpec& spec, int jobs) {
  spec.validate();
  const PrecisionContext ctx(spec.digits);
  const auto grid = build_grid(spec, ctx.bits());
  const auto system = assemble_system(grid, static_cast<std::size_t>(spec.n_rows), ctx, jobs);
  CoefficientSet cs = solve_coefficients(system, ctx);
  cs.grid = spec;
  return cs;
}

double stability_metric(std::span<const Complex> deltas) {
  mpfr_prec_t bits = 64;
  for (const auto& d : deltas) bits = std::max(bits, d.precision());
  Real sum(bits);
  for (const auto& d : deltas) sum += d.im();
  return abs(sum).to_double();
}

HalfCrossing half_crossing(std::span<const Complex> deltas) {
  std::vector<double> re;
  re.reserve(deltas.size());
  for (const auto& d : deltas) re.push_back(d.re().to_double());

  HalfCrossing result;
  int previous_sign = 0;
  for (double v : re) {
    const int sign = v > 0.5 ? 1 : (v < 0.5 ? -1 : 0);
    if (sign == 0) continue;
    if (previous_sign != 0 && sign != previous_sign) ++result.sign_changes;
    previous_sign = sign;
  }

  for (std::size_t i = 0; i + 1 < re.size(); ++i) {
    const double da = re[i];
    const double db = re[i + 1];
    if (da > 0.5 && db <= 0.5) {
      result.index = static_cast<int>(i + 1);
      result.n_hat_star = static_cast<double>(i + 1) + (da - 0.5) / (da - db);
      return result;
    }
  }
  throw Error(ErrorCode::NoCrossing, "Re(delta) never falls through 1/2");
}

}  // namespace zetalab
