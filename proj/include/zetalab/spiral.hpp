#pragma once

// Partial sums of sum_n w_n (n^(-s) - chi(s) n^(s-1)). With unit weights the
// trajectory spirals outward; sigmoid weights wind it down toward the origin.

#include <functional>
#include <optional>
#include <vector>

#include "zetalab/precision.hpp"

namespace zetalab {

struct SpiralTrace {
  Complex s{64};
  bool weighted = false;
  std::vector<Complex> points;  // points[k-1] is the k-th partial sum
  std::optional<double> b_used;
};

/// The k-th term n^(-s) - chi n^(s-1), given chi = chi(s).
Complex spiral_term(long n, const Complex& s, const Complex& chi_s, const PrecisionContext& ctx);

SpiralTrace raw_partial_sums(const Complex& s, long n_terms, const PrecisionContext& ctx);
SpiralTrace weighted_partial_sums(const Complex& s, double b, long n_terms, const PrecisionContext& ctx);
/// Arbitrary real weights; weighted is set, b_used left empty.
SpiralTrace weighted_partial_sums(const Complex& s, const std::function<Real(long)>& weight, long n_terms,
                                  const PrecisionContext& ctx);

/// |sum d_n n^(-s) - chi(s) sum d_n n^(s-1)|, the modulus of the last weighted point.
double functional_residual(const Complex& s, double b, long n_terms, const PrecisionContext& ctx);

/// 2 * truncation_length(s, b, 10^-P).
long default_spiral_terms(const Complex& s, double b, const PrecisionContext& ctx);

/// max |points[k-1]| over k > from_index (1-based); 0 when the range is empty.
double max_modulus_after(const SpiralTrace& trace, long from_index);

}  // namespace zetalab
