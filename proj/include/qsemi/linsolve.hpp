#ifndef QSEMI_LINSOLVE_HPP
#define QSEMI_LINSOLVE_HPP

#include "qsemi/poly.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qsemi {

// Solves a x = b over Q by Gauss-Jordan elimination. Returns one solution (free
// unknowns set to zero) or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
{
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("solve_exact: right-hand side has the wrong length");
  const std::size_t cols = rows ? a.front().size() : 0;
  for (const auto& row : a)
    if (row.size() != cols) throw std::invalid_argument("solve_exact: ragged matrix");

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    const Rational inv = 1 / a[rank][c];
    for (std::size_t j = c; j < cols; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t i = rank; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;

  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = b[i];
  return x;
}

} // namespace qsemi

#endif
