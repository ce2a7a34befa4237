#ifndef QSEMI_MATRIX_HPP
#define QSEMI_MATRIX_HPP

#include "qsemi/poly.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsemi {

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix over the polynomial ring. Indices are 0-based.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries))
  {
    if (entries_.size() != rows * cols) throw DimensionError("Matrix: entry count does not match shape");
  }

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial(1);
    return m;
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  // Rows given as nested lists; convenient for small rational fixtures.
  static Matrix from_rows(const std::vector<std::vector<Polynomial>>& rows)
  {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  bool is_constant() const
  {
    for (const auto& e : entries_)
      if (!e.is_constant()) return false;
    return true;
  }

  Matrix& operator*=(const Polynomial& s)
  {
    for (auto& e : entries_) e *= s;
    return *this;
  }
  Matrix& operator+=(const Matrix& o)
  {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("Matrix: shape mismatch in sum");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b)
  {
    a += b * Polynomial(-1);
    return a;
  }
  friend Matrix operator*(Matrix a, const Polynomial& s) { return a *= s; }
  friend Matrix operator*(const Polynomial& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix transpose() const
  {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const
  {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  Matrix without(std::size_t row, std::size_t col) const
  {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != row) rs.push_back(i);
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != col) cs.push_back(j);
    return submatrix(rs, cs);
  }

  std::string str() const
  {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b)
{
  if (a.cols_ != b.rows_)
    throw DimensionError("mat_mul: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Matrix c(a.rows_, b.cols_);
  if (a.is_constant() && b.is_constant()) {
    std::vector<Rational> bv(b.entries_.size());
    for (std::size_t i = 0; i < bv.size(); ++i) bv[i] = b.entries_[i].constant_value();
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Rational s(0);
        for (std::size_t k = 0; k < a.cols_; ++k)
          if (!a(i, k).is_zero()) s += a(i, k).constant_value() * bv[k * b.cols_ + j];
        c(i, j) = Polynomial(s);
      }
    return c;
  }
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline void require_square(const Matrix& m, const char* op)
{
  if (!m.is_square())
    throw DimensionError(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
}

inline Polynomial trace(const Matrix& m)
{
  require_square(m, "mat_trace");
  Polynomial t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Row-by-row cofactor expansion memoized over the set of used columns:
// dp[mask] sums signed partial products of the first popcount(mask) rows.
inline Polynomial determinant(const Matrix& m)
{
  require_square(m, "mat_det");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1);
  if (n > 24) throw DimensionError("mat_det: subset expansion limited to 24x24");
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);

  const std::uint32_t full = (1u << n) - 1;
  std::vector<Polynomial> dp(std::size_t{1} << n);
  std::vector<bool> live(dp.size(), false);
  dp[0] = Polynomial(1);
  live[0] = true;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (!live[mask] || dp[mask].is_zero()) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint32_t bit = 1u << c;
      if ((mask & bit) || m(row, c).is_zero()) continue;
      const int inversions = std::popcount(mask & ~((bit << 1) - 1));
      Polynomial step = dp[mask] * m(row, c);
      if (inversions & 1) dp[mask | bit] -= step;
      else dp[mask | bit] += step;
      live[mask | bit] = true;
    }
    dp[mask] = Polynomial();
  }
  return dp[full];
}

// Transpose of the cofactor matrix.
inline Matrix adjugate(const Matrix& m)
{
  require_square(m, "mat_adjugate");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  if (n == 1) return Matrix::identity(1);
  if (n == 2)
    return Matrix::from_rows({{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}});
  Matrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial minor = determinant(m.without(j, i));
      adj(i, j) = ((i + j) % 2) ? -minor : minor;
    }
  return adj;
}

// Exact inverse of a constant matrix, adj(m)/det(m).
inline Matrix inverse_constant(const Matrix& m)
{
  require_square(m, "inverse");
  if (!m.is_constant()) throw std::invalid_argument("inverse: matrix entries must be constants");
  Rational d = determinant(m).constant_value();
  if (d == 0) throw std::domain_error("inverse: matrix is singular");
  return adjugate(m) * Polynomial(Rational(1) / d);
}

} // namespace qsemi

#endif
