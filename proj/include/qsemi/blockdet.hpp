#ifndef QSEMI_BLOCKDET_HPP
#define QSEMI_BLOCKDET_HPP

#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsemi {

// A 2k x 2k matrix seen as a k x k grid of 2 x 2 blocks.
class BlockMatrix {
public:
  BlockMatrix() = default;
  explicit BlockMatrix(std::size_t k) : k_(k), blocks_(k * k, Matrix::zero(2, 2)) {}

  static BlockMatrix from_blocks(std::size_t k, std::vector<Matrix> blocks)
  {
    if (blocks.size() != k * k) throw DimensionError("BlockMatrix: expected k*k blocks");
    for (const auto& b : blocks)
      if (b.rows() != 2 || b.cols() != 2) throw DimensionError("BlockMatrix: every block must be 2x2");
    BlockMatrix z;
    z.k_ = k;
    z.blocks_ = std::move(blocks);
    return z;
  }

  std::size_t k() const { return k_; }
  const Matrix& block(std::size_t r, std::size_t s) const { return blocks_.at(r * k_ + s); }

  void set_block(std::size_t r, std::size_t s, Matrix m)
  {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("BlockMatrix: every block must be 2x2");
    blocks_.at(r * k_ + s) = std::move(m);
  }

private:
  std::size_t k_ = 0;
  std::vector<Matrix> blocks_;
};

inline Matrix assemble(const BlockMatrix& z)
{
  Matrix m(2 * z.k(), 2 * z.k());
  for (std::size_t r = 0; r < z.k(); ++r)
    for (std::size_t s = 0; s < z.k(); ++s)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m(2 * r + i, 2 * s + j) = z.block(r, s)(i, j);
  return m;
}

// Block position (0-based) and whether the factor enters adjugated.
struct BlockFactor {
  int row = 0;
  int col = 0;
  bool adjointed = false;
  friend auto operator<=>(const BlockFactor&, const BlockFactor&) = default;
};

// Route in a block matrix: factors alternate sharing a block row and a block column,
// adjugated at the odd (1st, 3rd, ...) positions.
struct BlockRoute {
  std::vector<BlockFactor> factors;

  int length() const { return static_cast<int>(factors.size()); }

  // 1 for (adj X_ij, X_ij), else 0.
  int index() const
  {
    return factors.size() == 2 && factors[0].row == factors[1].row && factors[0].col == factors[1].col ? 1 : 0;
  }

  std::string str() const
  {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += ", ";
      s += factors[i].adjointed ? "adj X" : "X";
      s += std::to_string(factors[i].row + 1) + std::to_string(factors[i].col + 1);
    }
    return s + ")";
  }

  friend auto operator<=>(const BlockRoute&, const BlockRoute&) = default;
};

// Sorted multiset of canonical block routes.
using BlockRouteSet = std::vector<BlockRoute>;

// 0-based images: sigma[p] is the column picked by row p.
using Permutation = std::vector<int>;

inline std::string route_set_str(const BlockRouteSet& set)
{
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? ", " : "") + set[i].str();
  return s + "}";
}

inline BlockRoute adjoint(const BlockRoute& p)
{
  BlockRoute out;
  for (auto it = p.factors.rbegin(); it != p.factors.rend(); ++it)
    out.factors.push_back(BlockFactor{it->row, it->col, !it->adjointed});
  return out;
}

// Least sequence over even rotations and adjoint reversal.
inline BlockRoute canonicalize(const BlockRoute& p)
{
  const std::size_t n = p.factors.size();
  BlockRoute best = p;
  for (const BlockRoute& base : {p, adjoint(p)})
    for (std::size_t k = 0; k < n; k += 2) {
      BlockRoute rot;
      for (std::size_t i = 0; i < n; ++i) rot.factors.push_back(base.factors[(i + k) % n]);
      best = std::min(best, rot);
    }
  return best;
}

inline void validate_permutation(const Permutation& sigma)
{
  std::vector<bool> hit(sigma.size(), false);
  for (int c : sigma) {
    if (c < 0 || static_cast<std::size_t>(c) >= sigma.size() || hit[static_cast<std::size_t>(c)])
      throw std::invalid_argument("associated_route_set: not a permutation");
    hit[static_cast<std::size_t>(c)] = true;
  }
  if (sigma.size() % 2) throw std::invalid_argument("associated_route_set: permutation of odd degree");
}

// Alternating row/column cycle decomposition of the factors z_{p, sigma(p)}.
inline BlockRouteSet associated_route_set(const Permutation& sigma)
{
  validate_permutation(sigma);
  const std::size_t n = sigma.size();
  auto block_col = [&](std::size_t p) { return sigma[p] / 2; };

  // rows whose factor lies in each block column
  std::vector<std::vector<std::size_t>> col_rows(n / 2);
  for (std::size_t p = 0; p < n; ++p) col_rows[static_cast<std::size_t>(block_col(p))].push_back(p);

  std::vector<bool> used(n, false);
  BlockRouteSet out;
  for (std::size_t first = 0; first < n; ++first) {
    if (used[first]) continue;
    std::vector<std::size_t> chain{first, first ^ 1};
    if (block_col(first) != block_col(first ^ 1)) {
      std::size_t cur = first ^ 1;
      while (true) {
        const auto& rows = col_rows[static_cast<std::size_t>(block_col(cur))];
        std::size_t next = rows[0] == cur ? rows[1] : rows[0];
        if (next == first) break;
        chain.push_back(next);
        chain.push_back(next ^ 1);
        cur = next ^ 1;
      }
    }
    BlockRoute route;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      used[chain[i]] = true;
      route.factors.push_back(BlockFactor{static_cast<int>(chain[i] / 2), block_col(chain[i]), i % 2 == 0});
    }
    out.push_back(canonicalize(route));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every block row and block column is covered by exactly one route, in a closed alternating chain.
inline bool is_valid_route_set(const BlockRouteSet& set, int k)
{
  std::vector<int> row_use(static_cast<std::size_t>(k), 0), col_use(static_cast<std::size_t>(k), 0);
  for (const auto& p : set) {
    const std::size_t n = p.factors.size();
    if (n < 2 || n % 2) return false;
    std::set<int> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = p.factors[i];
      const auto& g = p.factors[(i + 1) % n];
      if (f.row < 0 || f.row >= k || f.col < 0 || f.col >= k) return false;
      if (f.adjointed != (i % 2 == 0)) return false;
      // adj X_rs then X_rt share the row; X_rt then adj X_ut share the column
      if (i % 2 == 0 ? f.row != g.row : f.col != g.col) return false;
      rows.insert(f.row);
      cols.insert(f.col);
    }
    for (int r : rows) ++row_use[static_cast<std::size_t>(r)];
    for (int c : cols) ++col_use[static_cast<std::size_t>(c)];
  }
  return std::all_of(row_use.begin(), row_use.end(), [](int u) { return u == 1; }) &&
         std::all_of(col_use.begin(), col_use.end(), [](int u) { return u == 1; });
}

inline constexpr int default_route_set_bound = 4;

// Representatives of the route-set classes produced by sweeping all of S_{2k}.
inline std::vector<BlockRouteSet> enumerate_route_set_classes(int k, int bound = default_route_set_bound)
{
  if (k < 1) throw std::invalid_argument("enumerate_route_set_classes: k must be positive");
  if (k > bound)
    throw std::out_of_range("enumerate_route_set_classes: k = " + std::to_string(k) + " exceeds the bound " +
                            std::to_string(bound));
  Permutation sigma(static_cast<std::size_t>(2 * k));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::set<BlockRouteSet> classes;
  do
    classes.insert(associated_route_set(sigma));
  while (std::next_permutation(sigma.begin(), sigma.end()));
  return {classes.begin(), classes.end()};
}

// Trace of the product of the route's blocks in order, adjugating where marked.
inline Polynomial block_route_trace(const BlockRoute& p, const BlockMatrix& z)
{
  Matrix m = Matrix::identity(2);
  for (const auto& f : p.factors) {
    const Matrix& b = z.block(static_cast<std::size_t>(f.row), static_cast<std::size_t>(f.col));
    m = m * (f.adjointed ? adjugate(b) : b);
  }
  return trace(m);
}

// (-1)^(l/2 - 1) 2^(-nu) tr P
inline Polynomial signed_route_term(const BlockRoute& p, const BlockMatrix& z)
{
  Polynomial t = block_route_trace(p, z);
  Rational c = (p.length() / 2 - 1) % 2 ? -1 : 1;
  if (p.index() == 1) c /= 2;
  return t.scale(c);
}

inline Polynomial route_set_term(const BlockRouteSet& set, const BlockMatrix& z)
{
  Polynomial prod(1);
  for (const auto& p : set) prod *= signed_route_term(p, z);
  return prod;
}

// Sum over route-set classes; `classes` must come from enumerate_route_set_classes(z.k()).
inline Polynomial det_via_routes(const BlockMatrix& z, const std::vector<BlockRouteSet>& classes)
{
  Polynomial sum;
  for (const auto& set : classes) sum += route_set_term(set, z);
  return sum;
}

inline Polynomial det_via_routes(const BlockMatrix& z, int bound = default_route_set_bound)
{
  return det_via_routes(z, enumerate_route_set_classes(static_cast<int>(z.k()), bound));
}

// A permutation whose factors occupy the given blocks; `blocks` must hit every block row
// and every block column exactly twice (with multiplicity).
inline Permutation permutation_for_blocks(const std::vector<std::pair<int, int>>& blocks, int k)
{
  if (blocks.size() != static_cast<std::size_t>(2 * k))
    throw std::invalid_argument("permutation_for_blocks: need exactly two blocks per block row");
  std::vector<int> row_fill(static_cast<std::size_t>(k), 0), col_fill(static_cast<std::size_t>(k), 0);
  Permutation sigma(static_cast<std::size_t>(2 * k), -1);
  for (auto [r, s] : blocks) {
    if (r < 0 || r >= k || s < 0 || s >= k) throw std::invalid_argument("permutation_for_blocks: block out of range");
    int& rf = row_fill[static_cast<std::size_t>(r)];
    int& cf = col_fill[static_cast<std::size_t>(s)];
    if (rf == 2 || cf == 2)
      throw std::invalid_argument("permutation_for_blocks: a block row or column is used more than twice");
    sigma[static_cast<std::size_t>(2 * r + rf++)] = 2 * s + cf++;
  }
  return sigma;
}

} // namespace qsemi

#endif
