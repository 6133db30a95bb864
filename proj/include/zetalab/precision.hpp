#pragma once

// Arbitrary-precision real and complex arithmetic over MPFR.
//
// A Real owns an mpfr_t whose binary precision is fixed at construction.
// Binary operations produce a result at the larger of the two operand
// precisions; unary functions keep the operand precision. All rounding is
// round-to-nearest-even. Non-finite results never escape: overflow, division
// by zero and ln(0) raise zetalab::Error.

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "zetalab/error.hpp"

namespace zetalab {

/// Decimal digit budget P plus internal guard digits.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 15;

  explicit PrecisionContext(int digits, int guard_digits = 10);

  int digits() const noexcept { return digits_; }
  int guard_digits() const noexcept { return guard_digits_; }

  /// Bits that carry exactly P decimal digits: ceil(P * log2(10)).
  mpfr_prec_t payload_bits() const noexcept;
  /// Working precision: payload plus guard.
  mpfr_prec_t bits() const noexcept;

  PrecisionContext with_digits(int digits) const { return PrecisionContext(digits, guard_digits_); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
  int guard_digits_;
};

mpfr_prec_t digits_to_bits(int digits) noexcept;

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(double value, mpfr_prec_t bits);
  Real(long value, mpfr_prec_t bits);
  Real(int value, mpfr_prec_t bits) : Real(static_cast<long>(value), bits) {}
  /// Parses a decimal literal ("1.5", "-2e-3"); throws ParseError.
  Real(std::string_view text, mpfr_prec_t bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  /// Copy rounded (nearest-even) to a new precision.
  Real rounded(mpfr_prec_t bits) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long_floor() const;
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; zero maps to a very negative value.
  long exponent2() const noexcept;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator-(const Real& x);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) noexcept { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;

  static Real pi(mpfr_prec_t bits);
  static Real ln2(mpfr_prec_t bits);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log10(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real ldexp(const Real& x, long e);

/// Scientific notation with exactly `digits` significant digits: "-1.2340e-5".
std::string to_string(const Real& x, int digits);

class Complex {
 public:
  explicit Complex(mpfr_prec_t bits = 64) : re_(bits), im_(bits) {}
  Complex(Real re, Real im);
  explicit Complex(Real re);
  Complex(double re, double im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits) {}

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  Real& re() noexcept { return re_; }
  Real& im() noexcept { return im_; }

  mpfr_prec_t precision() const noexcept;
  Complex rounded(mpfr_prec_t bits) const { return {re_.rounded(bits), im_.rounded(bits)}; }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Complex& rhs);

  friend Complex operator-(const Complex& z) { return {-z.re_, -z.im_}; }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& a, Complex b) { return b *= a; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }

  friend bool operator==(const Complex& a, const Complex& b) noexcept {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
/// |z|^2, cheaper than abs() for pivot comparisons.
Real norm(const Complex& z);
Real arg(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch; throws LogOfZero for z = 0.
Complex log(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
/// b^z for real b > 0.
Complex pow(const Real& base, const Complex& z);

/// n^(-s) = exp(-s ln n), evaluated at ctx.bits().
Complex power_term(long n, const Complex& s, const PrecisionContext& ctx);
/// Same, at an explicit binary precision.
Complex power_term(long n, const Complex& s, mpfr_prec_t bits);

/// "re±im i" with exactly `digits` significant digits per component.
std::string to_string(const Complex& z, int digits);
/// Parses the to_string grammar (also accepts plain decimals for either part).
Complex parse_complex(std::string_view text, mpfr_prec_t bits);

}  // namespace zetalab
