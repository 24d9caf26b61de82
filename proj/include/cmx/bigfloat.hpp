#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "cmx/rational.hpp"

namespace cmx {

inline constexpr int kDefaultDigits = 64;

// MPFR bits used for a decimal precision, including a small guard.
mpfr_prec_t bits_for_digits(int digits);

/// Binary floating point number with an explicit working precision.
///
/// The precision is a property of each value, never of the environment:
/// constructors take a decimal digit count and binary operations round to the
/// larger precision of their operands.
class BigFloat {
 public:
  BigFloat();
  BigFloat(long value, int digits);
  BigFloat(const Rational& value, int digits);
  BigFloat(const BigFloat& value, int digits);

  static BigFloat parse(std::string_view text, int digits);
  static BigFloat pi(int digits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }
  int digits() const;

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Exact binary value of this number.
  Rational to_rational() const;

  // Decimal rendering with the given number of significant digits.
  std::string str(int significant) const;
  // Fixed notation with the given number of digits after the point.
  std::string fixed(int decimals) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, long b);
  friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
  friend BigFloat operator/(const BigFloat& a, long b);
  friend BigFloat operator+(const BigFloat& a, long b);
  friend BigFloat operator-(const BigFloat& a, long b);
  friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
  friend BigFloat operator-(long a, const BigFloat& b) { return -(b - a); }
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, long b);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  struct Bits {
    mpfr_prec_t value;
  };
  explicit BigFloat(Bits bits);
  static Bits wider(const BigFloat& a, const BigFloat& b);

  mpfr_t value_;

  friend BigFloat abs(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat sin(const BigFloat& x);
  friend BigFloat cos(const BigFloat& x);
  friend BigFloat atan(const BigFloat& x);
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x);
  friend BigFloat tan(const BigFloat& x);
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b);
  friend BigFloat pow(const BigFloat& x, long n);
  friend BigFloat pow10(long n, int digits);
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat tan(const BigFloat& x);
BigFloat atan(const BigFloat& x);
BigFloat atan2(const BigFloat& y, const BigFloat& x);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
BigFloat pow(const BigFloat& x, long n);
// 10^n at the given precision.
BigFloat pow10(long n, int digits);

// 10^(-digits/2), the default "numerically zero" threshold at a precision.
BigFloat half_precision_tolerance(int digits);

/// Complex number with BigFloat parts.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() = default;
  explicit BigComplex(BigFloat real);
  BigComplex(BigFloat real, BigFloat imag) : re(std::move(real)), im(std::move(imag)) {}
  BigComplex(const Rational& real, int digits);

  BigComplex& operator+=(const BigComplex& rhs);
  BigComplex& operator-=(const BigComplex& rhs);
  BigComplex& operator*=(const BigComplex& rhs);
  BigComplex& operator/=(const BigComplex& rhs);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) { return {a.re * s, a.im * s}; }
  BigComplex operator-() const { return {-re, -im}; }

  int digits() const { return re.digits(); }
  std::string str(int significant) const;
};

BigFloat abs(const BigComplex& z);
BigFloat norm(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);

}  // namespace cmx
