#include "zetalab/zeta.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

namespace zetalab {
namespace {

// Exact B_0, B_2, B_4, ... from
//   B_{2k} = -1/(2k+1) * ( sum_{i<k} C(2k+1, 2i) B_{2i} - (2k+1)/2 ).
class BernoulliTable {
 public:
  std::shared_ptr<const std::vector<mpq_class>> get(std::size_t count) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!table_ || table_->size() < count) {
      auto next = std::make_shared<std::vector<mpq_class>>(table_ ? *table_ : std::vector<mpq_class>{});
      extend(*next, std::max(count, 2 * (next->size() + 16)));
      table_ = std::move(next);
    }
    return table_;
  }

 private:
  static void extend(std::vector<mpq_class>& b, std::size_t count) {
    if (b.empty()) b.emplace_back(1);
    for (std::size_t k = b.size(); k < count; ++k) {
      const unsigned long m = 2 * k + 1;
      mpq_class acc = -mpq_class(static_cast<long>(m), 2);
      mpz_class binom;
      for (std::size_t i = 0; i < k; ++i) {
        mpz_bin_uiui(binom.get_mpz_t(), m, 2 * i);
        acc += mpq_class(binom) * b[i];
      }
      mpq_class bk = -acc / mpq_class(static_cast<long>(m));
      bk.canonicalize();
      b.push_back(std::move(bk));
    }
  }

  std::mutex mutex_;
  std::shared_ptr<const std::vector<mpq_class>> table_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

Real from_rational(const mpq_class& q, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

bool is_real_integer(const Complex& s) { return s.im().is_zero() && mpfr_integer_p(s.re().get()); }

long ceil_to_long(double x) { return static_cast<long>(std::ceil(x)); }

// Bits to add so that cancellation in the Dirichlet partial sum and large phases
// t * ln n do not eat into the requested digits.
mpfr_prec_t oracle_extra_bits(const Complex& s, long cutoff) {
  const double sigma = s.re().to_double();
  const double t = std::fabs(s.im().to_double());
  const double ln_n = std::log(static_cast<double>(std::max(cutoff, 2L)));
  double extra = 16.0 + std::log2(1.0 + t * ln_n);
  if (sigma < 1.0) extra += (1.0 - sigma) * std::log2(static_cast<double>(std::max(cutoff, 2L)));
  return static_cast<mpfr_prec_t>(std::ceil(extra));
}

struct EulerMaclaurinState {
  Complex value;
  int order = 0;
  bool certified = false;
};

// Sum to cutoff-1, add the integral and half-term, then Bernoulli corrections.
// order < 0 means: add terms until the first neglected one is below `threshold`
// (certified), or stop when they start to grow (not certified).
EulerMaclaurinState euler_maclaurin(const Complex& s_in, mpfr_prec_t bits, long cutoff, int order,
                                    const Real* threshold) {
  const Complex s = s_in.rounded(bits);
  Complex sum(bits);
  for (long n = 1; n < cutoff; ++n) sum += power_term(n, s, bits);

  const Real big_n(cutoff, bits);
  const Complex n_pow = power_term(cutoff, s, bits);  // N^-s
  const Real one(1L, bits);
  const Complex s_minus_one = s - Complex(one);
  // N^(1-s)/(s-1) = N * N^-s / (s-1)
  sum += (n_pow * big_n) / s_minus_one;
  sum += n_pow * Real(0.5, bits);

  // P_1 = s / (2N); P_{k+1} = P_k (s+2k-1)(s+2k) / ((2k+1)(2k+2) N^2)
  Complex factor = s * (one / (Real(2L, bits) * big_n));
  const Real inv_n2 = one / (big_n * big_n);
  Real previous_mag(bits);
  bool have_previous = false;
  EulerMaclaurinState state{Complex(bits), 0, false};

  const int max_order = order >= 0 ? order : 4 * static_cast<int>(bits);
  int k = 1;
  for (; k <= max_order; ++k) {
    Complex term = factor * n_pow * bernoulli_even(k, bits);
    if (order < 0) {
      const Real mag = abs(term);
      Real scale = abs(sum);
      if (scale < one) scale = one;
      if (mag < *threshold * scale) {
        state.certified = true;
        break;
      }
      if (have_previous && mag > previous_mag) break;  // asymptotic series turned around
      previous_mag = mag;
      have_previous = true;
    }
    sum += term;
    const long a = 2 * k - 1;
    const long b = 2 * k;
    Complex next = (s + Complex(Real(a, bits))) * (s + Complex(Real(b, bits)));
    next *= inv_n2 / Real((2 * k + 1) * (2 * k + 2), bits);
    factor *= next;
  }
  state.value = std::move(sum);
  state.order = k - 1;
  if (order >= 0) state.certified = true;
  return state;
}

void require_not_pole_at_one(const Complex& s) {
  if (s.im().is_zero() && s.re() == Real(1L, s.precision())) {
    throw Error(ErrorCode::Pole, "zeta has a pole at s = 1");
  }
}

}  // namespace

Real bernoulli_even(int k, mpfr_prec_t bits) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "Bernoulli index must be non-negative");
  auto table = bernoulli_table().get(static_cast<std::size_t>(k) + 1);
  return from_rational((*table)[static_cast<std::size_t>(k)], bits);
}

OracleResult zeta_euler_maclaurin(const Complex& s, const PrecisionContext& ctx, long cutoff, int order) {
  require_not_pole_at_one(s);
  if (cutoff < 1 || order < 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be >= 1 and order >= 0");
  const mpfr_prec_t bits = ctx.bits() + oracle_extra_bits(s, cutoff);
  auto state = euler_maclaurin(s, bits, cutoff, order, nullptr);
  return {state.value.rounded(ctx.bits()), ctx.digits(), cutoff, state.order};
}

OracleResult zeta(const Complex& s, const PrecisionContext& ctx) {
  require_not_pole_at_one(s);
  const double t = std::fabs(s.im().to_double());
  const double pi = 3.14159265358979323846;
  long cutoff = std::max(ceil_to_long(t / pi) + 10, ceil_to_long(1.3 * ctx.digits()));

  // 10^(-P-5)
  const mpfr_prec_t probe_bits = ctx.bits() + 32;
  Real threshold(10L, probe_bits);
  mpfr_pow_si(threshold.get(), threshold.get(), -(ctx.digits() + 5), MPFR_RNDN);

  constexpr int kMaxDoublings = 6;
  for (int attempt = 0; attempt <= kMaxDoublings; ++attempt) {
    const mpfr_prec_t bits = ctx.bits() + oracle_extra_bits(s, cutoff);
    auto state = euler_maclaurin(s, bits, cutoff, -1, &threshold);
    if (state.certified) return {state.value.rounded(ctx.bits()), ctx.digits(), cutoff, state.order};
    cutoff *= 2;
  }
  throw Error(ErrorCode::PrecisionUnreachable,
              "Euler-Maclaurin could not certify " + std::to_string(ctx.digits()) + " digits at s = " +
                  to_string(s, 17));
}

Complex gamma(const Complex& s_in, const PrecisionContext& ctx) {
  if (is_real_integer(s_in) && s_in.re().sign() <= 0) {
    throw Error(ErrorCode::Pole, "gamma has a pole at non-positive integer " + to_string(s_in.re(), 17));
  }
  const double mod = abs(s_in).to_double();
  const mpfr_prec_t bits =
      ctx.bits() + 16 + static_cast<mpfr_prec_t>(std::ceil(2.0 * std::log2(2.0 + mod * std::log(2.0 + mod))));
  const Complex s = s_in.rounded(bits);
  const Real one(1L, bits);
  const Real half(0.5, bits);
  const Real pi = Real::pi(bits);

  if (s.re() < half) {
    // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
    const Complex reflected = Complex(one) - s;
    Complex denom = sin(s * pi) * gamma(reflected, ctx.with_digits(ctx.digits() + 5));
    return (Complex(pi) / denom).rounded(ctx.bits());
  }

  // Stirling is accurate once 2 pi |z| exceeds the bit budget in nats.
  const double radius = (static_cast<double>(bits) * std::log(2.0) + 10.0) / (2.0 * 3.14159265358979323846);
  const double sigma = s.re().to_double();
  const double t = s.im().to_double();
  long shift = 0;
  if (std::hypot(sigma, t) < radius) {
    shift = static_cast<long>(std::ceil(std::sqrt(std::max(0.0, radius * radius - t * t)) - sigma));
    shift = std::max(shift, 0L);
  }

  Complex z = s + Complex(Real(shift, bits));
  Complex pochhammer(one);
  for (long j = 0; j < shift; ++j) pochhammer *= s + Complex(Real(j, bits));

  // ln Gamma(z) = (z - 1/2) ln z - z + ln(2 pi)/2 + sum_j B_2j / (2j (2j-1) z^(2j-1))
  const Complex ln_z = log(z);
  Complex lg = (z - Complex(half)) * ln_z - z;
  lg += Complex(log(Real(2L, bits) * pi) * half);
  const Complex inv_z = Complex(one) / z;
  const Complex inv_z2 = inv_z * inv_z;
  Complex power = inv_z;
  const Real eps = ldexp(one, -static_cast<long>(bits));
  Real previous(bits);
  for (int j = 1; j < 4 * static_cast<int>(bits); ++j) {
    Complex term = power * (bernoulli_even(j, bits) / Real(static_cast<long>(2 * j) * (2 * j - 1), bits));
    const Real mag = abs(term);
    if (mag < eps) break;
    if (j > 1 && mag > previous) {
      throw Error(ErrorCode::PrecisionUnreachable, "Stirling series diverged before reaching working precision");
    }
    previous = mag;
    lg += term;
    power *= inv_z2;
  }
  return (exp(lg) / pochhammer).rounded(ctx.bits());
}

Complex chi(const Complex& s_in, const PrecisionContext& ctx) {
  if (is_real_integer(s_in)) {
    const long n = s_in.re().to_long_floor();
    if (n >= 1) throw Error(ErrorCode::Pole, "chi product form degenerates at positive integer s = " + std::to_string(n));
    if (n % 2 == 0) throw Error(ErrorCode::Degenerate, "chi vanishes at non-positive even s = " + std::to_string(n));
  }
  const double mod = abs(s_in).to_double();
  const int extra_digits = 5 + static_cast<int>(std::ceil(std::log10(2.0 + mod)));
  const PrecisionContext inner = ctx.with_digits(ctx.digits() + extra_digits);
  const mpfr_prec_t bits = inner.bits();
  const Complex s = s_in.rounded(bits);
  const Real one(1L, bits);
  const Real pi = Real::pi(bits);

  Complex result = pow(Real(2L, bits), s);
  result *= pow(pi, s - Complex(one));
  result *= sin(s * (pi * Real(0.5, bits)));
  result *= gamma(Complex(one) - s, inner);
  return result.rounded(ctx.bits());
}

}  // namespace zetalab
