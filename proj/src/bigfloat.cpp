#include "cmx/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "cmx/errors.hpp"

namespace cmx {

namespace {

constexpr double kLog2Of10 = 3.3219280948873623;
constexpr mpfr_prec_t kGuardBits = 16;

std::string format(const char* spec, int width, mpfr_srcptr x) {
  char* buffer = nullptr;
  int n = mpfr_asprintf(&buffer, spec, width, x);
  if (n < 0) throw NumericalError("mpfr_asprintf failed");
  std::unique_ptr<char, void (*)(char*)> owned(buffer, [](char* p) { mpfr_free_str(p); });
  return std::string(buffer, static_cast<std::size_t>(n));
}

}  // namespace

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 1) throw UsageError("precision must be at least one decimal digit");
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + kGuardBits;
}

BigFloat::BigFloat() : BigFloat(Bits{bits_for_digits(kDefaultDigits)}) {}

BigFloat::BigFloat(Bits bits) {
  mpfr_init2(value_, bits.value);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(long value, int digits) : BigFloat(Bits{bits_for_digits(digits)}) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, int digits) : BigFloat(Bits{bits_for_digits(digits)}) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& value, int digits) : BigFloat(Bits{bits_for_digits(digits)}) {
  mpfr_set(value_, value.value_, MPFR_RNDN);
}

BigFloat BigFloat::parse(std::string_view text, int digits) {
  BigFloat r(Bits{bits_for_digits(digits)});
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end == s.c_str() || *end != '\0') throw UsageError("malformed decimal: '" + s + "'");
  return r;
}

BigFloat BigFloat::pi(int digits) {
  BigFloat r(Bits{bits_for_digits(digits)});
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

int BigFloat::digits() const {
  return static_cast<int>(std::floor(static_cast<double>(bits() - kGuardBits) / kLog2Of10));
}

Rational BigFloat::to_rational() const {
  if (!is_finite()) throw NumericalError("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string BigFloat::str(int significant) const { return format("%#.*Rg", significant, value_); }

std::string BigFloat::fixed(int decimals) const { return format("%.*Rf", decimals, value_); }

BigFloat::Bits BigFloat::wider(const BigFloat& a, const BigFloat& b) {
  return Bits{std::max(a.bits(), b.bits())};
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::wider(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::wider(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::wider(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::wider(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, long b) {
  BigFloat r(BigFloat::Bits{a.bits()});
  mpfr_mul_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, long b) {
  BigFloat r(BigFloat::Bits{a.bits()});
  mpfr_div_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, long b) {
  BigFloat r(BigFloat::Bits{a.bits()});
  mpfr_add_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, long b) {
  BigFloat r(BigFloat::Bits{a.bits()});
  mpfr_sub_si(r.value_, a.value_, b, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(Bits{bits()});
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigFloat& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

#define CMX_UNARY(name, fn)                         \
  BigFloat name(const BigFloat& x) {                \
    BigFloat r(BigFloat::Bits{x.bits()});           \
    fn(r.value_, x.value_, MPFR_RNDN);              \
    return r;                                       \
  }

CMX_UNARY(abs, mpfr_abs)
CMX_UNARY(sqrt, mpfr_sqrt)
CMX_UNARY(exp, mpfr_exp)
CMX_UNARY(log, mpfr_log)
CMX_UNARY(sin, mpfr_sin)
CMX_UNARY(cos, mpfr_cos)
CMX_UNARY(tan, mpfr_tan)
CMX_UNARY(atan, mpfr_atan)

#undef CMX_UNARY

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(BigFloat::wider(y, x));
  mpfr_atan2(r.value_, y.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::wider(a, b));
  mpfr_hypot(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(BigFloat::Bits{x.bits()});
  mpfr_pow_si(r.value_, x.value_, n, MPFR_RNDN);
  return r;
}

BigFloat pow10(long n, int digits) {
  BigFloat r(BigFloat::Bits{bits_for_digits(digits)});
  mpfr_ui_pow_ui(r.value_, 10, static_cast<unsigned long>(n < 0 ? -n : n), MPFR_RNDN);
  if (n < 0) mpfr_ui_div(r.value_, 1, r.value_, MPFR_RNDN);
  return r;
}

BigFloat half_precision_tolerance(int digits) { return pow10(-(digits / 2), digits); }

// ---------------------------------------------------------------------------

BigComplex::BigComplex(BigFloat real) : re(std::move(real)), im(0, re.digits()) {}

BigComplex::BigComplex(const Rational& real, int digits) : re(real, digits), im(0, digits) {}

BigComplex& BigComplex::operator+=(const BigComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& rhs) {
  BigFloat r = re * rhs.re - im * rhs.im;
  BigFloat i = re * rhs.im + im * rhs.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& rhs) {
  // Smith's algorithm keeps the intermediate quotient bounded.
  if (abs(rhs.re) >= abs(rhs.im)) {
    BigFloat ratio = rhs.im / rhs.re;
    BigFloat den = rhs.re + rhs.im * ratio;
    BigFloat r = (re + im * ratio) / den;
    BigFloat i = (im - re * ratio) / den;
    re = std::move(r);
    im = std::move(i);
  } else {
    BigFloat ratio = rhs.re / rhs.im;
    BigFloat den = rhs.re * ratio + rhs.im;
    BigFloat r = (re * ratio + im) / den;
    BigFloat i = (im * ratio - re) / den;
    re = std::move(r);
    im = std::move(i);
  }
  return *this;
}

std::string BigComplex::str(int significant) const {
  std::string imag = im.str(significant);
  if (imag.front() != '-') imag = "+" + imag;
  return re.str(significant) + imag + "i";
}

BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }

BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

}  // namespace cmx
