#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace orbifolder {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Column-major reading of a permutation: column j has a single 1 in row image[j].
  static RationalMatrix permutation(const std::vector<std::size_t>& image, std::size_t rows) {
    RationalMatrix m(rows, image.size());
    for (std::size_t j = 0; j < image.size(); ++j) m(image[j], j) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product: dimension mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<Rational> operator*(const RationalMatrix& a, const std::vector<Rational>& v) {
    if (a.cols_ != v.size()) throw ValidationError("matrix-vector product: dimension mismatch");
    std::vector<Rational> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0) out[i] += a(i, k) * v[k];
    return out;
  }

  RationalMatrix& operator+=(const RationalMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw ValidationError("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  RationalMatrix& operator*=(const Rational& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  bool operator==(const RationalMatrix& other) const = default;

  bool is_identity() const { return is_square() && *this == identity(rows_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

/// Fraction-free (Bareiss) forward elimination on an integer matrix.
/// Returns the pivot columns in order.
inline std::vector<std::size_t> bareiss_pivots(std::vector<std::vector<Integer>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.size();
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / previous;  // exact division
      }
      m[i][c] = 0;
    }
    previous = m[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Each row scaled by the lcm of its denominators.
inline std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& a) {
  std::vector<std::vector<Integer>> m(a.rows(), std::vector<Integer>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) l = boost::multiprecision::lcm(l, denominator_of(a(i, j)));
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = numerator_of(a(i, j)) * (l / denominator_of(a(i, j)));
  }
  return m;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& a) {
  auto m = detail::integer_rows(a);
  return detail::bareiss_pivots(m, a.cols()).size();
}

/// Columns of `a` at its pivot positions: a basis of the column space.
inline RationalMatrix column_space_basis(const RationalMatrix& a) {
  auto m = detail::integer_rows(a);
  const auto pivots = detail::bareiss_pivots(m, a.cols());
  RationalMatrix basis(a.rows(), pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) basis(i, k) = a(i, pivots[k]);
  return basis;
}

/// Coordinates c with basis * c = v, for a basis with independent columns.
/// Empty optional when v is outside the span.
inline std::optional<std::vector<Rational>> solve_in_basis(const RationalMatrix& basis, const std::vector<Rational>& v) {
  const std::size_t n = basis.rows(), k = basis.cols();
  if (v.size() != n) throw ValidationError("solve_in_basis: dimension mismatch");
  // Gauss-Jordan on [basis | v] over the rationals.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = basis(i, j);
    m[i][k] = v[i];
  }
  std::vector<std::size_t> pivot_row(k, n);
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) throw ValidationError("solve_in_basis: basis columns are dependent");
    std::swap(m[p], m[r]);
    const Rational pivot = m[r][c];
    for (std::size_t j = c; j <= k; ++j) m[r][j] /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j <= k; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_row[c] = r++;
  }
  for (std::size_t i = r; i < n; ++i)
    if (m[i][k] != 0) return std::nullopt;
  std::vector<Rational> coords(k);
  for (std::size_t c = 0; c < k; ++c) coords[c] = m[pivot_row[c]][k];
  return coords;
}

}  // namespace orbifolder
