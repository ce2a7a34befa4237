#ifndef QSEMI_ROUTES_HPP
#define QSEMI_ROUTES_HPP

#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"
#include "qsemi/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsemi {

class RouteError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Closed walk in the doubled quiver, edges in traversal order.
struct Route {
  std::vector<Edge> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  friend auto operator<=>(const Route&, const Route&) = default;
};

inline std::string route_str(const Quiver& q, const Route& r)
{
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ',';
    s += q.edge_label(r.edges[i]);
  }
  return s + ")";
}

inline void validate_route(const Quiver& q, const Route& r)
{
  if (r.empty()) throw RouteError("route must contain at least one edge");
  for (std::size_t i = 0; i < r.size(); ++i) {
    Edge e = r.edges[i], next = r.edges[(i + 1) % r.size()];
    if (q.head(e) != q.tail(next))
      throw RouteError("route " + route_str(q, r) + " does not chain at position " + std::to_string(i + 1) +
                       ": " + q.edge_label(e) + " ends at " + q.head(e) + " but " + q.edge_label(next) +
                       " starts at " + q.tail(next));
  }
}

// Parses `(a,~b)`; `rev_b` is accepted for `~b`.
inline Route parse_route(const Quiver& q, std::string_view text)
{
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw ParseError({}, "route must be written as (e1,e2,...)");
  text = text.substr(1, text.size() - 2);
  Route r;
  while (true) {
    auto comma = text.find(',');
    auto tok = trim(text.substr(0, comma));
    if (tok.empty()) throw ParseError({}, "empty edge in route");
    r.edges.push_back(q.parse_edge(tok));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  validate_route(q, r);
  return r;
}

inline Route rotate(const Route& r, std::size_t k)
{
  Route out;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) out.edges.push_back(r.edges[(i + k) % n]);
  return out;
}

// Reversed sequence with every edge swapped for its partner.
inline Route adjoint(const Route& r)
{
  Route out;
  for (auto it = r.edges.rbegin(); it != r.edges.rend(); ++it) out.edges.push_back(it->partner());
  return out;
}

inline Route concat(const Route& a, const Route& b)
{
  Route out = a;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

inline Route slice(const Route& r, std::size_t from, std::size_t to)
{
  return Route{std::vector<Edge>(r.edges.begin() + static_cast<std::ptrdiff_t>(from),
                                 r.edges.begin() + static_cast<std::ptrdiff_t>(to))};
}

inline bool is_simple(const Route& r)
{
  std::set<Edge> seen;
  for (Edge e : r.edges)
    if (!seen.insert(e).second) return false;
  return true;
}

// Equivalence class under rotation and adjoint reversal, by its least representative.
struct RouteClass {
  Route canonical;
  friend auto operator<=>(const RouteClass&, const RouteClass&) = default;
};

inline RouteClass canonicalize(const Route& r)
{
  if (r.empty()) return RouteClass{};
  Route best = r;
  const Route adj = adjoint(r);
  for (std::size_t k = 0; k < r.size(); ++k) {
    best = std::min(best, rotate(r, k));
    best = std::min(best, rotate(adj, k));
  }
  return RouteClass{std::move(best)};
}

// Contains cyclically adjacent edges (e, partner(e)) and is longer than that pair.
// For 2x2 blocks the pair multiplies to |phi| E, so the trace factors through shorter routes.
inline bool has_adjacent_partner_pair(const Route& r)
{
  if (r.size() <= 2) return false;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.edges[(i + 1) % r.size()] == r.edges[i].partner()) return true;
  return false;
}

// All classes of simple routes. Each closed trail is grown once from its least edge,
// using only larger edges afterwards, then deduplicated up to adjoint reversal.
inline std::vector<RouteClass> enumerate_simple_routes(const Quiver& q)
{
  const std::vector<Edge> edges = q.doubled_edges();
  std::map<std::string, std::vector<std::size_t>> out_edges;
  for (std::size_t i = 0; i < edges.size(); ++i) out_edges[q.tail(edges[i])].push_back(i);

  std::set<RouteClass> classes;
  std::vector<bool> used(edges.size(), false);
  Route path;

  auto dfs = [&](auto&& self, std::size_t start, const std::string& at) -> void {
    if (at == q.tail(edges[start])) classes.insert(canonicalize(path));
    for (std::size_t i : out_edges[at]) {
      if (i <= start || used[i]) continue;
      used[i] = true;
      path.edges.push_back(edges[i]);
      self(self, start, q.head(edges[i]));
      path.edges.pop_back();
      used[i] = false;
    }
  };

  for (std::size_t s = 0; s < edges.size(); ++s) {
    used[s] = true;
    path.edges = {edges[s]};
    dfs(dfs, s, q.head(edges[s]));
    used[s] = false;
  }
  return {classes.begin(), classes.end()};
}

// Classes of all routes (repeats allowed) with at most max_length edges.
inline std::vector<RouteClass> enumerate_route_classes(const Quiver& q, std::size_t max_length)
{
  const std::vector<Edge> edges = q.doubled_edges();
  std::set<RouteClass> classes;
  Route path;
  auto dfs = [&](auto&& self, const std::string& start, const std::string& at) -> void {
    if (!path.empty() && at == start) classes.insert(canonicalize(path));
    if (path.size() == max_length) return;
    for (Edge e : edges) {
      if (q.tail(e) != at) continue;
      path.edges.push_back(e);
      self(self, start, q.head(e));
      path.edges.pop_back();
    }
  };
  for (const auto& v : q.vertices()) dfs(dfs, v, v);
  return {classes.begin(), classes.end()};
}

// Simple route classes whose traces are not products of shorter simple-route traces
// via the |X| E factorization of an adjacent (X, adj X) pair.
inline std::vector<RouteClass> generator_routes(const Quiver& q)
{
  std::vector<RouteClass> out;
  for (auto& c : enumerate_simple_routes(q))
    if (!has_adjacent_partner_pair(c.canonical)) out.push_back(c);
  return out;
}

// tr(mats[n-1] ... mats[0]); runs of constant factors are multiplied over Q first, and
// the sequence is rotated so the last factor is symbolic and only the diagonal is formed.
inline Polynomial product_trace(std::vector<Matrix> mats, std::size_t dim)
{
  if (mats.empty()) return Polynomial(static_cast<long>(dim));
  auto sym = std::find_if(mats.rbegin(), mats.rend(), [](const Matrix& x) { return !x.is_constant(); });
  if (sym != mats.rend()) std::rotate(mats.begin(), sym.base(), mats.end());
  const Matrix last = std::move(mats.back());
  mats.pop_back();
  Matrix m = Matrix::identity(last.rows());
  std::optional<Matrix> run;
  for (const Matrix& x : mats) {
    if (x.is_constant()) {
      run = run ? x * *run : x;
      continue;
    }
    if (run) {
      m = *run * m;
      run.reset();
    }
    m = x * m;
  }
  if (run) m = *run * m;
  if (last.rows() != m.cols() || last.cols() != m.rows()) throw DimensionError("product_trace: shapes do not close up");
  Polynomial t;
  for (std::size_t i = 0; i < last.rows(); ++i)
    for (std::size_t j = 0; j < last.cols(); ++j)
      if (!last(i, j).is_zero() && !m(j, i).is_zero()) t += last(i, j) * m(j, i);
  return t;
}

// Trace of the product along the route; the last-traversed edge is leftmost.
inline Polynomial route_trace(const Route& r, const Representation& rep)
{
  validate_route(rep.quiver, r);
  const std::string& start = rep.quiver.tail(r.edges.front());
  std::vector<Matrix> mats;
  for (Edge e : r.edges) mats.push_back(associated_matrix(rep, e));
  return product_trace(mats, static_cast<std::size_t>(rep.dim(start)));
}

// Character exponents: each reverse edge of arrow a contributes +1 at head(a), -1 at tail(a).
inline std::map<std::string, int> route_weight(const Route& r, const Quiver& q)
{
  std::map<std::string, int> w;
  for (const auto& v : q.vertices()) w[v] = 0;
  for (Edge e : r.edges) {
    if (!e.reversed) continue;
    const Arrow& a = q.arrow(e.arrow);
    w[a.head] += 1;
    w[a.tail] -= 1;
  }
  return w;
}

// Degree of the route trace in each arrow's entry variables: one per occurrence of a,
// dim - 1 per occurrence of the reverse edge (adjugate entries are (dim-1)-minors).
inline std::map<std::string, int> route_multidegree(const Route& r, const Quiver& q, const DimensionVector& dims)
{
  std::map<std::string, int> deg;
  for (const auto& a : q.arrows()) deg[a.name] = 0;
  for (Edge e : r.edges) {
    const Arrow& a = q.arrow(e.arrow);
    deg[a.name] += e.reversed ? dims.at(a.head) - 1 : 1;
  }
  return deg;
}

inline std::string weight_str(const std::map<std::string, int>& w)
{
  std::string s = "{";
  bool first = true;
  for (const auto& [v, n] : w) {
    if (!first) s += ", ";
    first = false;
    s += v + ":" + std::to_string(n);
  }
  return s + "}";
}

////////////////////////////
// Trace expressions      //
////////////////////////////

// Polynomial in trace symbols t_i; t_i stands for the trace of symbols[i].
struct TraceExpr {
  Polynomial expr;
  std::vector<RouteClass> symbols;

  Polynomial evaluate(const Representation& rep) const
  {
    Bindings b;
    for (std::size_t i = 0; i < symbols.size(); ++i)
      b.emplace(VarId::aux(static_cast<int>(i)), route_trace(symbols[i].canonical, rep));
    return substitute(expr, b);
  }

  std::string str(const Quiver& q) const
  {
    std::string s = expr.str();
    for (std::size_t i = 0; i < symbols.size(); ++i)
      s += "\n  t_" + std::to_string(i) + " = tr" + route_str(q, symbols[i].canonical);
    return s;
  }
};

namespace detail {

class SymbolTable {
public:
  Polynomial symbol(const Route& r)
  {
    RouteClass c = canonicalize(r);
    auto [it, inserted] = index_.try_emplace(c, static_cast<int>(symbols_.size()));
    if (inserted) symbols_.push_back(c);
    return Polynomial::var(VarId::aux(it->second));
  }

  TraceExpr finish(Polynomial expr) &&
  {
    return TraceExpr{std::move(expr), std::move(symbols_)};
  }

private:
  std::map<RouteClass, int> index_;
  std::vector<RouteClass> symbols_;
};

// tr of the identity on a 2-dimensional space.
inline const Polynomial& empty_trace()
{
  static const Polynomial two(2);
  return two;
}

// Rotation of r starting at the first occurrence of its least repeated edge,
// and the position of that edge's second occurrence.
inline std::optional<std::pair<Route, std::size_t>> split_at_repeat(const Route& r)
{
  std::map<Edge, std::vector<std::size_t>> pos;
  for (std::size_t i = 0; i < r.size(); ++i) pos[r.edges[i]].push_back(i);
  for (const auto& [e, where] : pos)
    if (where.size() >= 2) return std::make_pair(rotate(r, where[0]), where[1] - where[0]);
  return std::nullopt;
}

inline Polynomial reduce_rec(const Route& r, const Quiver& q, SymbolTable& table,
                             std::map<RouteClass, Polynomial>& memo)
{
  if (r.empty()) return empty_trace();
  if (is_simple(r)) return table.symbol(r);
  RouteClass key = canonicalize(r);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  // r ~ (X, P1, X, P2):  tr = tr(X,P1) tr(X,P2) - 1/2 tr(X,adj X) tr(P1, adj P2)
  auto [rot, j] = *split_at_repeat(r);
  const Edge x = rot.edges[0];
  const Route p1 = slice(rot, 1, j);
  const Route p2 = slice(rot, j + 1, rot.size());
  const Route x_only{{x}};

  Polynomial out = reduce_rec(concat(x_only, p1), q, table, memo) * reduce_rec(concat(x_only, p2), q, table, memo);
  Polynomial correction = reduce_rec(Route{{x, x.partner()}}, q, table, memo) *
                          reduce_rec(concat(p1, adjoint(p2)), q, table, memo);
  out -= correction.scale(Rational(1, 2));
  memo.emplace(key, out);
  return out;
}

} // namespace detail

// Rewrites the trace of a route with a repeated edge into traces of simple routes
// (2-dimensional representations).
inline TraceExpr reduce_repeated(const Route& r, const Quiver& q)
{
  validate_route(q, r);
  if (is_simple(r)) throw RouteError("reduce_repeated: route " + route_str(q, r) + " is already simple");
  detail::SymbolTable table;
  std::map<RouteClass, Polynomial> memo;
  Polynomial expr = detail::reduce_rec(r, q, table, memo);
  return std::move(table).finish(std::move(expr));
}

// For r ~ (~a, S, ~b, P) with head(a) = tail(b), tail(a) = head(b), in traversal order:
//   tr r = tr(b,a) tr P tr S - tr P tr(S,a,b) - tr S tr(P,b,a) + tr(S,a,P,b)
// (2-dimensional representations; empty segments have trace 2).
inline TraceExpr eliminate_adjoint_pair(const Route& r, const Quiver& q)
{
  validate_route(q, r);
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.edges[i].reversed) continue;
    const Arrow& a = q.arrow(r.edges[i].arrow);
    for (std::size_t d = 1; d < n; ++d) {
      const Edge eb = r.edges[(i + d) % n];
      if (!eb.reversed) continue;
      const Arrow& b = q.arrow(eb.arrow);
      if (a.head != b.tail || a.tail != b.head) continue;

      const Route rot = rotate(r, i);
      const Route s = slice(rot, 1, d);
      const Route p = slice(rot, d + 1, n);
      const Route ea{{Edge{false, r.edges[i].arrow}}};
      const Route eb_base{{Edge{false, eb.arrow}}};

      detail::SymbolTable table;
      auto t = [&](const Route& x) { return x.empty() ? detail::empty_trace() : table.symbol(x); };
      const Polynomial tp = t(p), ts = t(s);
      Polynomial expr = t(concat(eb_base, ea)) * tp * ts;
      expr -= tp * t(concat(concat(s, ea), eb_base));
      expr -= ts * t(concat(concat(p, eb_base), ea));
      expr += t(concat(concat(concat(s, ea), p), eb_base));
      return std::move(table).finish(std::move(expr));
    }
  }
  throw RouteError("eliminate_adjoint_pair: route " + route_str(q, r) +
                   " has no reverse pair ~a, ~b with head(a) = tail(b) and tail(a) = head(b)");
}

} // namespace qsemi

#endif
