#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "cmx/scalar.hpp"

namespace cmx {

/// Dense univariate polynomial, coefficients indexed by power.
///
/// Trailing exact zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree() == -1.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Poly monomial(T coefficient, std::size_t power) {
    std::vector<T> c(power + 1, zero_like(coefficient));
    c[power] = std::move(coefficient);
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](std::size_t power) const { return c_[power]; }
  const T& leading() const { return c_.back(); }

  template <class U>
  U eval(const U& x) const {
    if (c_.empty()) return zero_like(x);
    U acc = U(c_.back());
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * x + U(c_[k]);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return Poly(std::move(d));
  }

  // Multiply by x^k.
  Poly shifted(std::size_t k) const {
    if (c_.empty()) return {};
    std::vector<T> c(k, zero_like(c_.front()));
    c.insert(c.end(), c_.begin(), c_.end());
    return Poly(std::move(c));
  }

  template <class F>
  auto map(F&& f) const -> Poly<decltype(f(std::declval<const T&>()))> {
    using R = decltype(f(std::declval<const T&>()));
    std::vector<R> out;
    out.reserve(c_.size());
    for (const T& x : c_) out.push_back(f(x));
    return Poly<R>(std::move(out));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const Poly& longer = a.c_.size() >= b.c_.size() ? a : b;
    const Poly& shorter = a.c_.size() >= b.c_.size() ? b : a;
    std::vector<T> c = longer.c_;
    for (std::size_t k = 0; k < shorter.c_.size(); ++k) c[k] = c[k] + shorter.c_[k];
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a) {
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (const T& x : a.c_) c.push_back(-x);
    return Poly(std::move(c));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, zero_like(a.c_.front() * b.c_.front()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_exact_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }

  friend Poly operator*(const Poly& a, const T& s) {
    std::vector<T> c;
    c.reserve(a.c_.size());
    for (const T& x : a.c_) c.push_back(x * s);
    return Poly(std::move(c));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

}  // namespace cmx
