#include "cmx/linalg.hpp"

#include <utility>

namespace cmx {

namespace {

struct BareissResult {
  Matrix<Integer> reduced;  // upper triangular in the first n columns
  bool singular = false;
  int swaps = 0;
};

// In-place fraction-free elimination over the first n columns of an n x m
// integer matrix (m >= n).
BareissResult bareiss(Matrix<Integer> a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  BareissResult out;
  Integer previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) {
        out.singular = true;
        out.reduced = std::move(a);
        return out;
      }
      for (std::size_t j = 0; j < m; ++j) std::swap(a(k, j), a(p, j));
      ++out.swaps;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    previous = a(k, k);
  }
  out.reduced = std::move(a);
  return out;
}

// Scales row i by the lcm of its denominators; returns the integer matrix and
// the product of the scale factors.
std::pair<Matrix<Integer>, Integer> clear_denominators(const Matrix<Rational>& a, std::span<const Rational> rhs) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols() + (rhs.empty() ? 0 : 1);
  Matrix<Integer> out(n, m, Integer(0));
  Integer product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den_mpz_t());
    if (!rhs.empty()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs[i].get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j).get_num() * (lcm / a(i, j).get_den());
    if (!rhs.empty()) out(i, m - 1) = rhs[i].get_num() * (lcm / rhs[i].get_den());
    product *= lcm;
  }
  return {std::move(out), std::move(product)};
}

template <class T>
std::optional<std::vector<T>> pivoted_solve(const Matrix<T>& a, std::span<const T> b, int digits) {
  if (!a.square() || a.rows() == 0) throw UsageError("solve: matrix must be square and non-empty");
  if (b.size() != a.rows()) throw UsageError("solve: right-hand side length does not match matrix");
  const std::size_t n = a.rows();
  Matrix<T> w = a;
  std::vector<T> rhs(b.begin(), b.end());
  std::vector<BigFloat> row_scale;
  row_scale.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigFloat s(0, digits);
    for (std::size_t j = 0; j < n; ++j) {
      BigFloat v = abs(w(i, j));
      if (v > s) s = v;
    }
    row_scale.push_back(std::move(s));
  }
  const BigFloat tol = half_precision_tolerance(digits);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    BigFloat best = abs(w(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      BigFloat v = abs(w(i, k));
      if (v > best) {
        best = std::move(v);
        p = i;
      }
    }
    if (best.is_zero() || best < tol * row_scale[p]) return std::nullopt;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      std::swap(rhs[k], rhs[p]);
      std::swap(row_scale[k], row_scale[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = w(i, k) / w(k, k);
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<T> x(n, zero_like(rhs[0]));
  for (std::size_t i = n; i-- > 0;) {
    T acc = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= w(i, j) * x[j];
    x[i] = acc / w(i, i);
  }
  return x;
}

template <class T, class Det, class Make>
Poly<T> interpolate_pencil(const Matrix<T>& t1, const Matrix<T>& t0, Det det, Make make) {
  if (!t1.square() || t1.rows() != t0.rows() || t1.cols() != t0.cols() || t1.rows() == 0)
    throw UsageError("pencil_char_poly: matrices must be square, non-empty, and of equal size");
  const std::size_t m = t1.rows();
  // Newton divided differences on the integer nodes 0..m.
  std::vector<T> dd;
  dd.reserve(m + 1);
  for (std::size_t node = 0; node <= m; ++node) {
    Matrix<T> shifted = t1;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) shifted(i, j) = t1(i, j) - t0(i, j) * static_cast<long>(node);
    dd.push_back(det(shifted));
  }
  for (std::size_t level = 1; level <= m; ++level)
    for (std::size_t k = m; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / static_cast<long>(level);
  // Horner expansion of sum_k dd[k] * prod_{i<k} (b - i).
  Poly<T> result(std::vector<T>{dd[m]});
  for (std::size_t k = m; k-- > 0;) {
    Poly<T> factor(std::vector<T>{make(-static_cast<long>(k)), make(1)});
    result = result * factor + Poly<T>(std::vector<T>{dd[k]});
  }
  return result;
}

}  // namespace

std::optional<std::vector<Rational>> exact_solve(const Matrix<Rational>& a, std::span<const Rational> b) {
  if (!a.square() || a.rows() == 0) throw UsageError("exact_solve: matrix must be square and non-empty");
  if (b.size() != a.rows()) throw UsageError("exact_solve: right-hand side length does not match matrix");
  const std::size_t n = a.rows();
  auto [scaled, _] = clear_denominators(a, b);
  BareissResult r = bareiss(std::move(scaled));
  if (r.singular) return std::nullopt;
  const Matrix<Integer>& u = r.reduced;
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(u(i, n));
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(u(i, j)) * x[j];
    x[i] = acc / Rational(u(i, i));
  }
  return x;
}

Rational determinant(const Matrix<Rational>& a) {
  if (!a.square() || a.rows() == 0) throw UsageError("determinant: matrix must be square and non-empty");
  auto [scaled, scale] = clear_denominators(a, {});
  BareissResult r = bareiss(std::move(scaled));
  if (r.singular) return 0;
  Rational det(r.reduced(a.rows() - 1, a.rows() - 1));
  if (r.swaps % 2 != 0) det = -det;
  return det / Rational(scale);
}

std::optional<std::vector<BigFloat>> solve(const Matrix<BigFloat>& a, std::span<const BigFloat> b, int digits) {
  return pivoted_solve(a, b, digits);
}

std::optional<std::vector<BigComplex>> solve(const Matrix<BigComplex>& a, std::span<const BigComplex> b, int digits) {
  return pivoted_solve(a, b, digits);
}

BigFloat determinant(const Matrix<BigFloat>& a) {
  if (!a.square() || a.rows() == 0) throw UsageError("determinant: matrix must be square and non-empty");
  const std::size_t n = a.rows();
  Matrix<BigFloat> w = a;
  BigFloat det(1, a(0, 0).digits());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(w(i, k)) > abs(w(p, k))) p = i;
    if (w(p, k).is_zero()) return BigFloat(0, a(0, 0).digits());
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(w(k, j), w(p, j));
      det = -det;
    }
    det *= w(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      BigFloat f = w(i, k) / w(k, k);
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return det;
}

Poly<Rational> pencil_char_poly(const Matrix<Rational>& t1, const Matrix<Rational>& t0) {
  return interpolate_pencil(
      t1, t0, [](const Matrix<Rational>& m) { return determinant(m); }, [](long v) { return Rational(v); });
}

Poly<BigFloat> pencil_char_poly(const Matrix<BigFloat>& t1, const Matrix<BigFloat>& t0) {
  const int digits = t1.rows() > 0 ? t1(0, 0).digits() : kDefaultDigits;
  return interpolate_pencil(
      t1, t0, [](const Matrix<BigFloat>& m) { return determinant(m); }, [digits](long v) { return BigFloat(v, digits); });
}

}  // namespace cmx
