#include "zetalab/precision.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstring>
#include <limits>
#include <memory>

namespace zetalab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownConfigKey: return "UnknownConfigKey";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::LogOfZero: return "LogOfZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Pole: return "Pole";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::PrecisionUnreachable: return "PrecisionUnreachable";
    case ErrorCode::NearZeroRow: return "NearZeroRow";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::RealAxis: return "RealAxis";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::NoInteriorMinimum: return "NoInteriorMinimum";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

void check_finite(const Real& x, const char* op) {
  if (mpfr_nan_p(x.get()) || mpfr_inf_p(x.get())) {
    throw Error(ErrorCode::Overflow, std::string("non-finite result in ") + op);
  }
}

mpfr_prec_t max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

mpfr_prec_t digits_to_bits(int digits) noexcept {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362347870319429489390));
}

PrecisionContext::PrecisionContext(int digits, int guard_digits) : digits_(digits), guard_digits_(guard_digits) {
  if (digits < kMinDigits) {
    throw Error(ErrorCode::InvalidArgument, "precision must be at least 15 digits, got " + std::to_string(digits));
  }
  if (guard_digits < 0) throw Error(ErrorCode::InvalidArgument, "guard digits must be non-negative");
}

mpfr_prec_t PrecisionContext::payload_bits() const noexcept { return digits_to_bits(digits_); }

mpfr_prec_t PrecisionContext::bits() const noexcept { return digits_to_bits(digits_ + guard_digits_); }

// ---------------------------------------------------------------- Real

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, kRnd);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, kRnd);
}

Real::Real(std::string_view text, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  const std::string buf(text);
  char* end = nullptr;
  if (!buf.empty()) mpfr_strtofr(value_, buf.c_str(), &end, 10, kRnd);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    mpfr_clear(value_);
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + buf + "'");
  }
  if (!mpfr_number_p(value_)) {
    mpfr_clear(value_);
    throw Error(ErrorCode::ParseError, "non-finite number: '" + buf + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept {
  // Leave the source as a valid minimal-precision zero.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::rounded(mpfr_prec_t bits) const {
  Real r(bits);
  mpfr_set(r.value_, value_, kRnd);
  return r;
}

long Real::to_long_floor() const { return mpfr_get_si(value_, MPFR_RNDD); }

long Real::exponent2() const noexcept {
  if (mpfr_zero_p(value_)) return std::numeric_limits<long>::min() / 2;
  return mpfr_get_exp(value_);
}

Real& Real::operator+=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRnd);
  mpfr_add(value_, value_, rhs.value_, kRnd);
  check_finite(*this, "add");
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRnd);
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  check_finite(*this, "sub");
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRnd);
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  check_finite(*this, "mul");
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "real division by zero");
  if (rhs.precision() > precision()) mpfr_prec_round(value_, rhs.precision(), kRnd);
  mpfr_div(value_, value_, rhs.value_, kRnd);
  check_finite(*this, "div");
  return *this;
}

Real operator-(const Real& x) {
  Real r(x.precision());
  mpfr_neg(r.value_, x.value_, kRnd);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.value_, a.value_, b.value_, kRnd);
  check_finite(r, "add");
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, kRnd);
  check_finite(r, "sub");
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, kRnd);
  check_finite(r, "mul");
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "real division by zero");
  Real r(max_prec(a, b));
  mpfr_div(r.value_, a.value_, b.value_, kRnd);
  check_finite(r, "div");
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.value_, kRnd);
  return r;
}

Real Real::ln2(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_log2(r.value_, kRnd);
  return r;
}

#define ZETALAB_UNARY(name, fn)              \
  Real name(const Real& x) {                 \
    Real r(x.precision());                   \
    fn(r.get(), x.get(), kRnd);              \
    check_finite(r, #name);                  \
    return r;                                \
  }

ZETALAB_UNARY(abs, mpfr_abs)
ZETALAB_UNARY(exp, mpfr_exp)
ZETALAB_UNARY(sin, mpfr_sin)
ZETALAB_UNARY(cos, mpfr_cos)
ZETALAB_UNARY(sinh, mpfr_sinh)
ZETALAB_UNARY(cosh, mpfr_cosh)

#undef ZETALAB_UNARY

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of negative number");
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), kRnd);
  return r;
}

Real log(const Real& x) {
  if (x.is_zero()) throw Error(ErrorCode::LogOfZero, "ln(0)");
  if (x.sign() < 0) throw Error(ErrorCode::InvalidArgument, "ln of negative real");
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), kRnd);
  return r;
}

Real log10(const Real& x) {
  if (x.is_zero()) throw Error(ErrorCode::LogOfZero, "log10(0)");
  if (x.sign() < 0) throw Error(ErrorCode::InvalidArgument, "log10 of negative real");
  Real r(x.precision());
  mpfr_log10(r.get(), x.get(), kRnd);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, kRnd);
  check_finite(r, "ldexp");
  return r;
}

std::string to_string(const Real& x, int digits) {
  if (digits < 1) throw Error(ErrorCode::InvalidArgument, "digit count must be positive");
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x.get(), kRnd), mpfr_free_str);
  std::string mant(raw.get());
  std::string out;
  if (!mant.empty() && mant.front() == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  long e = x.is_zero() ? 0 : static_cast<long>(exp10) - 1;
  out.push_back(mant.front());
  if (mant.size() > 1) {
    out.push_back('.');
    out.append(mant, 1, std::string::npos);
  }
  out.push_back('e');
  out.push_back(e < 0 ? '-' : '+');
  out += std::to_string(e < 0 ? -e : e);
  return out;
}

// ---------------------------------------------------------------- Complex

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

Complex::Complex(Real re) : re_(std::move(re)), im_(0L, re_.precision()) {}

mpfr_prec_t Complex::precision() const noexcept { return std::max(re_.precision(), im_.precision()); }

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  // (a+bi)(c+di); written so that conj(x)*conj(y) rounds to conj(x*y) exactly.
  Real ac = re_ * rhs.re_;
  Real bd = im_ * rhs.im_;
  Real ad = re_ * rhs.im_;
  Real bc = im_ * rhs.re_;
  re_ = ac - bd;
  im_ = ad + bc;
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "complex division by zero");
  // Scale by 2^-e of the larger divisor component to keep |rhs|^2 in range.
  const long e = std::max(rhs.re_.exponent2(), rhs.im_.exponent2());
  Real c = ldexp(rhs.re_, -e);
  Real d = ldexp(rhs.im_, -e);
  Real den = c * c + d * d;
  Real re = re_ * c + im_ * d;
  Real im = im_ * c - re_ * d;
  re_ = ldexp(re / den, -e);
  im_ = ldexp(im / den, -e);
  return *this;
}

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), kRnd);
  check_finite(r, "abs");
  return r;
}

Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  const mpfr_prec_t p = z.precision();
  Real mag = exp(z.re().rounded(p));
  Real s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), kRnd);
  return {mag * c, mag * s};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw Error(ErrorCode::LogOfZero, "complex ln(0)");
  Real r = abs(z);
  return {log(r), arg(z)};
}

Complex sin(const Complex& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  const mpfr_prec_t p = z.precision();
  Real s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), kRnd);
  Real sh(p), ch(p);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), kRnd);
  check_finite(ch, "sin");
  return {s * ch, c * sh};
}

Complex cos(const Complex& z) {
  // cos(x+iy) = cos x cosh y - i sin x sinh y
  const mpfr_prec_t p = z.precision();
  Real s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), z.re().get(), kRnd);
  Real sh(p), ch(p);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().get(), kRnd);
  check_finite(ch, "cos");
  return {c * ch, -(s * sh)};
}

Complex pow(const Real& base, const Complex& z) {
  if (base.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "pow requires a positive real base");
  const mpfr_prec_t p = std::max(base.precision(), z.precision());
  Real lb = log(base.rounded(p));
  return exp(Complex(z.re() * lb, z.im() * lb));
}

Complex power_term(long n, const Complex& s, const PrecisionContext& ctx) { return power_term(n, s, ctx.bits()); }

Complex power_term(long n, const Complex& s, mpfr_prec_t p) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power_term requires n >= 1");
  if (n == 1) return Complex(Real(1L, p), Real(0L, p));
  Real ln_n(p);
  mpfr_log_ui(ln_n.get(), static_cast<unsigned long>(n), kRnd);
  Real mag = exp(-(s.re().rounded(p) * ln_n));
  Real phase = s.im().rounded(p) * ln_n;
  Real sn(p), cs(p);
  mpfr_sin_cos(sn.get(), cs.get(), phase.get(), kRnd);
  return {mag * cs, -(mag * sn)};
}

std::string to_string(const Complex& z, int digits) {
  std::string re = to_string(z.re(), digits);
  std::string im = to_string(z.im(), digits);
  std::string out = re;
  if (im.front() == '-') {
    out += im;
  } else {
    out.push_back('+');
    out += im;
  }
  out.push_back('i');
  return out;
}

Complex parse_complex(std::string_view text, mpfr_prec_t bits) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
  if (s.back() != 'i') return Complex(Real(s, bits), Real(0L, bits));
  s.pop_back();
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    return Complex(Real(0L, bits), Real(s.empty() || s == "+" ? std::string("1") : s, bits));
  }
  std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+" || im == "-") im += "1";
  if (im.front() == '+') im.erase(0, 1);
  return Complex(Real(re, bits), Real(im, bits));
}

}  // namespace zetalab
