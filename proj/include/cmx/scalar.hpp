#pragma once

#include <concepts>

#include "cmx/bigfloat.hpp"
#include "cmx/rational.hpp"

namespace cmx {

// Real scalar modes: exact rationals, or binary floats at a stated precision.
template <class T>
concept RealScalar = std::same_as<T, Rational> || std::same_as<T, BigFloat>;

template <RealScalar T>
T lift(const Rational& q, int digits) {
  if constexpr (std::same_as<T, Rational>)
    return q;
  else
    return BigFloat(q, digits);
}

inline BigFloat to_bigfloat(const Rational& q, int digits) { return BigFloat(q, digits); }
inline BigFloat to_bigfloat(const BigFloat& x, int digits) { return BigFloat(x, digits); }

inline Rational zero_like(const Rational&) { return 0; }
inline BigFloat zero_like(const BigFloat& x) { return BigFloat(0, x.digits()); }
inline BigComplex zero_like(const BigComplex& z) { return BigComplex(BigFloat(0, z.digits())); }

inline bool is_exact_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_exact_zero(const BigFloat& x) { return x.is_zero(); }
inline bool is_exact_zero(const BigComplex& z) { return z.re.is_zero() && z.im.is_zero(); }

inline Rational magnitude(const Rational& q) { return abs(q); }
inline BigFloat magnitude(const BigFloat& x) { return abs(x); }

// Zero test in the scalar's own mode: exact for rationals, and
// |x| <= 10^(-digits/2) * scale for floats.
inline bool is_negligible(const Rational& x, const Rational&, int) { return sgn(x) == 0; }
inline bool is_negligible(const BigFloat& x, const BigFloat& scale, int digits) {
  return abs(x) <= half_precision_tolerance(digits) * abs(scale);
}

}  // namespace cmx
