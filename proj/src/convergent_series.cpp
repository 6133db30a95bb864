#include "zetalab/convergent_series.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

void check_args(const Complex& s, double b) {
  if (s.im().is_zero()) throw Error(ErrorCode::RealAxis, "generalized coefficients are undefined for Im s = 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw Error(ErrorCode::NonPositiveScale, "scale b must be positive");
}

// |t| / pi: the conjugate point gets the same weights.
Real center(const Complex& s, mpfr_prec_t bits) { return abs(s.im().rounded(bits)) / Real::pi(bits); }

Real weight(long n, const Real& c, const Real& b) {
  const mpfr_prec_t bits = std::max(c.precision(), b.precision());
  const Real one(1L, bits);
  return one / (one + exp((Real(n, bits) - c) / b));
}

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

// Term cache n^(-s), grown on demand, plus the reference value.
class Objective {
 public:
  Objective(const Complex& s, const PrecisionContext& ctx, double tail_eps)
      : s_(s.rounded(ctx.bits())), ctx_(ctx), tail_eps_(tail_eps), target_(zeta(s_, ctx).value),
        c_(center(s_, ctx.bits())) {}

  struct Eval {
    Real err;
    long terms;
  };

  Eval operator()(double b) {
    const long n = truncation_length(s_, b, tail_eps_);
    while (static_cast<long>(terms_.size()) < n) terms_.push_back(power_term(static_cast<long>(terms_.size()) + 1, s_, ctx_));
    const Real bb(b, ctx_.bits());
    Complex acc(ctx_.bits());
    for (long k = 1; k <= n; ++k) acc += terms_[static_cast<std::size_t>(k - 1)] * weight(k, c_, bb);
    return {abs(target_ - acc), n};
  }

  const Complex& s() const { return s_; }

 private:
  Complex s_;
  PrecisionContext ctx_;
  double tail_eps_;
  Complex target_;
  Real c_;
  std::vector<Complex> terms_;
};

BCalibration calibrate_once(const Complex& s, const PrecisionContext& ctx, const CalibrationOptions& opts) {
  const double tail_eps = opts.tail_eps.value_or(std::pow(10.0, -ctx.digits()));
  Objective objective(s, ctx, tail_eps);

  BCalibration cal;
  cal.s = objective.s();
  cal.working_digits = ctx.digits();

  Real best_err(ctx.bits());
  double best_b = 0.0;
  long best_terms = 0;
  bool have_best = false;
  auto probe = [&](double b) {
    auto [err, terms] = objective(b);
    cal.trace.push_back({b, err.to_double()});
    if (!have_best || err < best_err) {
      best_err = err;
      best_b = b;
      best_terms = terms;
      have_best = true;
    }
    return err;
  };

  const int m = opts.scan_samples;
  const double log_lo = std::log(opts.bracket_lo), log_hi = std::log(opts.bracket_hi);
  std::vector<double> grid(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) grid[static_cast<std::size_t>(i)] = std::exp(log_lo + (log_hi - log_lo) * i / (m - 1));
  grid.front() = opts.bracket_lo;
  grid.back() = opts.bracket_hi;

  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    probe(grid[i]);
    if (best_b == grid[i]) arg = i;
  }
  cal.scan_samples = cal.trace.size();
  if (arg == 0 || arg + 1 == grid.size()) {
    throw Error(ErrorCode::NoInteriorMinimum, "error is smallest at the bracket end B = " + std::to_string(grid[arg]) +
                                                  "; widen the bracket");
  }

  // golden section in ln B over the two cells around the scan minimum
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(grid[arg - 1]), d = std::log(grid[arg + 1]);
  double x1 = d - inv_phi * (d - a), x2 = a + inv_phi * (d - a);
  Real f1 = probe(std::exp(x1)), f2 = probe(std::exp(x2));
  while (std::exp(d) - std::exp(a) > opts.rel_tol * std::exp(0.5 * (a + d))) {
    if (f1 < f2) {
      d = x2;
      x2 = x1;
      f2 = f1;
      x1 = d - inv_phi * (d - a);
      f1 = probe(std::exp(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (d - a);
      f2 = probe(std::exp(x2));
    }
  }

  cal.b_hat = best_b;
  cal.terms = best_terms;
  cal.err_at_opt = best_err.to_double();
  cal.digits_gained = best_err.is_zero() ? static_cast<double>(ctx.digits()) : -log10(best_err).to_double();
  return cal;
}

}  // namespace

Real generalized_delta(long n, const Complex& s, const Real& b) {
  check_args(s, b.to_double());
  const mpfr_prec_t bits = std::max(s.precision(), b.precision());
  return weight(n, center(s, bits), b);
}

double generalized_delta(long n, const Complex& s, double b) {
  check_args(s, b);
  const double x = (static_cast<double>(n) - std::abs(s.im().to_double()) / std::numbers::pi) / b;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

long truncation_length(const Complex& s, double b, double tail_eps) {
  check_args(s, b);
  const double t = std::abs(s.im().to_double());
  const double sigma = s.re().to_double();
  const double c = t / std::numbers::pi;
  const double log_eps = std::log(tail_eps);
  long n = static_cast<long>(std::ceil(c)) + 1;
  // ln(d_N N^-sigma) = -softplus((N - c)/b) - sigma ln N
  while (-softplus((static_cast<double>(n) - c) / b) - sigma * std::log(static_cast<double>(n)) >= log_eps) {
    ++n;
    if (n > std::numeric_limits<int>::max()) throw Error(ErrorCode::InvalidArgument, "tail threshold unreachable");
  }
  return n;
}

Complex weighted_dirichlet_sum(const Complex& s, const std::function<Real(long)>& w, long n_terms,
                               const PrecisionContext& ctx) {
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "n_terms must be >= 1");
  Complex acc(ctx.bits());
  for (long n = 1; n <= n_terms; ++n) acc += power_term(n, s, ctx) * w(n);
  return acc;
}

Complex weighted_zeta(const Complex& s, double b, long n_terms, const PrecisionContext& ctx) {
  check_args(s, b);
  const Real c = center(s, ctx.bits());
  const Real bb(b, ctx.bits());
  return weighted_dirichlet_sum(s, [&](long n) { return weight(n, c, bb); }, n_terms, ctx);
}

BCalibration calibrate_b(const Complex& s, const PrecisionContext& ctx, const CalibrationOptions& opts) {
  check_args(s, 1.0);
  if (!(opts.bracket_lo > 0.0) || !(opts.bracket_hi > opts.bracket_lo)) {
    throw Error(ErrorCode::InvalidArgument, "bracket must satisfy 0 < lo < hi");
  }
  if (opts.scan_samples < 3) throw Error(ErrorCode::InvalidArgument, "scan needs at least 3 samples");
  PrecisionContext work = ctx;
  BCalibration cal = calibrate_once(s, work, opts);
  // An error within a few digits of the working precision is the arithmetic
  // floor, not the method; the valley floor is then flat and B is unreliable.
  while (opts.escalate && cal.digits_gained >= work.digits() - 8 && 2 * work.digits() <= opts.max_digits) {
    work = work.with_digits(2 * work.digits());
    cal = calibrate_once(s, work, opts);
  }
  return cal;
}

std::vector<ProfilePoint> accuracy_profile(double sigma, const std::vector<double>& t_values,
                                           const PrecisionContext& ctx, const CalibrationOptions& opts, int jobs) {
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "t values must be positive");
    if (i > 0 && !(t_values[i] > t_values[i - 1])) throw Error(ErrorCode::InvalidArgument, "t values must increase");
  }
  std::vector<ProfilePoint> out(t_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      out[i].t = t_values[i];
      try {
        out[i].calibration = calibrate_b(Complex(sigma, t_values[i], ctx.bits()), ctx, opts);
      } catch (const Error& e) {
        out[i].error_code = e.code();
        out[i].error = e.what();
      }
    }
  };
  const int n_workers = std::clamp(jobs, 1, std::max(1, static_cast<int>(out.size())));
  std::vector<std::thread> threads;
  for (int w = 1; w < n_workers; ++w) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  return out;
}

namespace {

struct Ols {
  double intercept, slope, r_squared;
};

Ols least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateFit, "all abscissae are equal");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - intercept - slope * x[i];
    ss_res += r * r;
  }
  // constant data is fit exactly by a zero slope
  const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return {intercept, slope, r2};
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::NonPositiveValue, what + " = " + std::to_string(v) + " has no logarithm");
  }
}

}  // namespace

ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& samples, double sigma) {
  if (samples.size() < 2) throw Error(ErrorCode::DegenerateFit, "power law needs at least 2 samples");
  std::vector<double> x, y;
  for (const auto& [t, b] : samples) {
    require_positive(t, "t");
    require_positive(b, "b_hat at t=" + std::to_string(t));
    x.push_back(std::log(t));
    y.push_back(std::log(b));
  }
  const Ols f = least_squares(x, y);
  return {sigma, std::exp(f.intercept), f.slope, f.r_squared, samples};
}

ExponentialFit fit_sigma_dependence(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw Error(ErrorCode::DegenerateFit, "exponential fit needs at least 3 samples");
  std::vector<double> x, y;
  for (const auto& [sigma, v] : samples) {
    require_positive(v, "value at sigma=" + std::to_string(sigma));
    x.push_back(sigma);
    y.push_back(std::log(v));
  }
  const Ols f = least_squares(x, y);
  return {f.intercept, f.slope, f.r_squared, samples};
}

}  // namespace zetalab
