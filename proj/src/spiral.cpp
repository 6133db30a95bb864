#include "zetalab/spiral.hpp"

#include <cmath>

#include "zetalab/convergent_series.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

void check_point(const Complex& s, long n_terms) {
  if (n_terms < 1) throw Error(ErrorCode::InvalidArgument, "n_terms must be >= 1");
  if (s.im().is_zero()) throw Error(ErrorCode::RealAxis, "spiral needs Im s != 0");
}

SpiralTrace accumulate(const Complex& s, const std::function<Real(long)>* weight, long n_terms,
                       const PrecisionContext& ctx) {
  check_point(s, n_terms);
  const Complex sw = s.rounded(ctx.bits());
  const Complex c = chi(sw, ctx);
  SpiralTrace trace;
  trace.s = sw;
  trace.weighted = weight != nullptr;
  trace.points.reserve(static_cast<std::size_t>(n_terms));
  Complex acc(ctx.bits());
  for (long n = 1; n <= n_terms; ++n) {
    Complex term = spiral_term(n, sw, c, ctx);
    if (weight) term = term * (*weight)(n);
    acc += term;
    trace.points.push_back(acc);
  }
  return trace;
}

}  // namespace

Complex spiral_term(long n, const Complex& s, const Complex& chi_s, const PrecisionContext& ctx) {
  const Complex one(1.0, 0.0, ctx.bits());
  return power_term(n, s, ctx) - chi_s * power_term(n, one - s, ctx);
}

SpiralTrace raw_partial_sums(const Complex& s, long n_terms, const PrecisionContext& ctx) {
  return accumulate(s, nullptr, n_terms, ctx);
}

SpiralTrace weighted_partial_sums(const Complex& s, const std::function<Real(long)>& weight, long n_terms,
                                  const PrecisionContext& ctx) {
  return accumulate(s, &weight, n_terms, ctx);
}

SpiralTrace weighted_partial_sums(const Complex& s, double b, long n_terms, const PrecisionContext& ctx) {
  check_point(s, n_terms);
  const Real bb(b, ctx.bits());
  const Complex sw = s.rounded(ctx.bits());
  generalized_delta(1, sw, bb);  // argument checks
  SpiralTrace trace = weighted_partial_sums(sw, [&](long n) { return generalized_delta(n, sw, bb); }, n_terms, ctx);
  trace.b_used = b;
  return trace;
}

double functional_residual(const Complex& s, double b, long n_terms, const PrecisionContext& ctx) {
  return abs(weighted_partial_sums(s, b, n_terms, ctx).points.back()).to_double();
}

long default_spiral_terms(const Complex& s, double b, const PrecisionContext& ctx) {
  return 2 * truncation_length(s, b, std::pow(10.0, -ctx.digits()));
}

double max_modulus_after(const SpiralTrace& trace, long from_index) {
  double best = 0.0;
  for (std::size_t k = static_cast<std::size_t>(std::max(0L, from_index)); k < trace.points.size(); ++k) {
    best = std::max(best, abs(trace.points[k]).to_double());
  }
  return best;
}

}  // namespace zetalab
