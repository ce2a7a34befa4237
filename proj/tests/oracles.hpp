#ifndef QSEMI_TEST_ORACLES_HPP
#define QSEMI_TEST_ORACLES_HPP

// Deliberately naive reference implementations. They share only the Polynomial and
// Matrix value types with the library, never its algorithms.

#include "qsemi/matrix.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using qsemi::Matrix;
using qsemi::Polynomial;
using qsemi::Rational;

inline int permutation_sign(const std::vector<int>& p)
{
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// sum over S_n of sign * prod m(i, p(i))
inline Polynomial leibniz_det(const Matrix& m)
{
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  Polynomial sum;
  do {
    Polynomial term(permutation_sign(p));
    for (int i = 0; i < n; ++i) term = term * m(static_cast<std::size_t>(i), static_cast<std::size_t>(p[static_cast<std::size_t>(i)]));
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

// Laplace expansion along the first row, recursively.
inline Polynomial cofactor_det(const Matrix& m)
{
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial(1);
  if (n == 1) return m(0, 0);
  Polynomial sum;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Polynomial t = m(0, j) * cofactor_det(minor);
    if (j % 2) sum -= t;
    else sum += t;
  }
  return sum;
}

// adj(m)_{ij} = (-1)^{i+j} det(m without row j, column i), through the Laplace oracle.
inline Matrix cofactor_adjugate(const Matrix& m)
{
  const std::size_t n = m.rows();
  Matrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = m(r, c);
        ++rr;
      }
      Polynomial d = cofactor_det(minor);
      adj(i, j) = (i + j) % 2 ? -d : d;
    }
  return adj;
}

// Closed trails (no edge twice) written with edge labels "a" / "~a".
using Trail = std::vector<std::string>;

struct LabeledEdge {
  std::string label, partner, from, to;
};

inline std::vector<LabeledEdge> doubled(const qsemi::Quiver& q)
{
  std::vector<LabeledEdge> es;
  for (const auto& a : q.arrows()) {
    es.push_back({a.name, "~" + a.name, a.tail, a.head});
    es.push_back({"~" + a.name, a.name, a.head, a.tail});
  }
  return es;
}

// Least string-vector over rotations of the trail and of its reversed-partnered form.
inline Trail canonical_trail(const Trail& t, const std::vector<LabeledEdge>& es)
{
  std::map<std::string, std::string> partner;
  for (const auto& e : es) partner[e.label] = e.partner;
  Trail rev;
  for (auto it = t.rbegin(); it != t.rend(); ++it) rev.push_back(partner.at(*it));
  Trail best = t;
  for (const Trail& base : {t, rev})
    for (std::size_t k = 0; k < base.size(); ++k) {
      Trail r(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
      r.insert(r.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
      best = std::min(best, r);
    }
  return best;
}

// Every ordered sequence of distinct edges that closes up, from every start; classes deduped.
inline std::set<Trail> closed_trail_classes(const qsemi::Quiver& q)
{
  const auto es = doubled(q);
  std::set<Trail> out;
  std::vector<bool> used(es.size(), false);
  Trail cur;
  std::string start;
  auto dfs = [&](auto&& self, const std::string& at) -> void {
    if (!cur.empty() && at == start) out.insert(canonical_trail(cur, es));
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (used[i] || es[i].from != at) continue;
      used[i] = true;
      cur.push_back(es[i].label);
      self(self, es[i].to);
      cur.pop_back();
      used[i] = false;
    }
  };
  for (const auto& v : q.vertices()) {
    start = v;
    dfs(dfs, v);
  }
  return out;
}

// Random polynomial in the given variables with small integer and half-integer coefficients.
inline Polynomial random_poly(qsemi::Rng& rng, const std::vector<qsemi::VarId>& vars, int terms, unsigned max_exp)
{
  std::uniform_int_distribution<int> coef(-6, 6), exp(0, static_cast<int>(max_exp)), den(1, 2);
  Polynomial p;
  for (int t = 0; t < terms; ++t) {
    qsemi::Monomial m;
    for (const auto& v : vars)
      if (int e = exp(rng)) m *= qsemi::Monomial(v, static_cast<unsigned>(e));
    p += Polynomial::term(m, Rational(coef(rng)) / den(rng));
  }
  return p;
}

} // namespace oracle

#endif
