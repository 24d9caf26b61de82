#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "cmx/errors.hpp"
#include "cmx/poly.hpp"
#include "cmx/scalar.hpp"

namespace cmx {

// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  explicit Matrix(const std::vector<std::vector<T>>& rows) : rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw UsageError("ragged matrix rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : Matrix(std::vector<std::vector<T>>(rows.begin(), rows.end())) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Exact solution of A x = b, or nullopt when det(A) == 0.
///
/// Rows are cleared of denominators and reduced by fraction-free (Bareiss)
/// elimination, so singularity is decided exactly.
std::optional<std::vector<Rational>> exact_solve(const Matrix<Rational>& a, std::span<const Rational> b);

Rational determinant(const Matrix<Rational>& a);

// Gaussian elimination with partial pivoting. A pivot counts as zero when
// |pivot| < 10^(-digits/2) * (largest entry of its original row).
std::optional<std::vector<BigFloat>> solve(const Matrix<BigFloat>& a, std::span<const BigFloat> b, int digits);
std::optional<std::vector<BigComplex>> solve(const Matrix<BigComplex>& a, std::span<const BigComplex> b, int digits);

BigFloat determinant(const Matrix<BigFloat>& a);

// det(T1 - b*T0) as a polynomial in b, built by interpolating the
// determinant at b = 0..M. Exact in rational mode.
Poly<Rational> pencil_char_poly(const Matrix<Rational>& t1, const Matrix<Rational>& t0);
Poly<BigFloat> pencil_char_poly(const Matrix<BigFloat>& t1, const Matrix<BigFloat>& t0);

}  // namespace cmx
