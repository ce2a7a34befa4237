#ifndef QSEMI_DOMZUB_HPP
#define QSEMI_DOMZUB_HPP

#include "qsemi/blockdet.hpp"
#include "qsemi/group.hpp"
#include "qsemi/linsolve.hpp"
#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"
#include "qsemi/routes.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qsemi {

struct Filler {
  enum class Kind { Zero, Identity, Arrow };
  Kind kind = Kind::Zero;
  std::string arrow;

  static Filler zero() { return {}; }
  static Filler identity() { return {Kind::Identity, {}}; }
  static Filler of(std::string arrow) { return {Kind::Arrow, std::move(arrow)}; }

  std::string str() const
  {
    switch (kind) {
    case Kind::Zero:
      return "0";
    case Kind::Identity:
      return "id";
    case Kind::Arrow:
      break;
    }
    return "arrow:" + arrow;
  }
  friend bool operator==(const Filler&, const Filler&) = default;
};

// Block matrix recipe: block (r, s) maps W_{i_s} to W_{j_r} and is y_{rs} F_{rs}.
struct DZSpec {
  std::vector<std::string> i_tuple; // column blocks
  std::vector<std::string> j_tuple; // row blocks
  std::vector<std::vector<Filler>> fillers; // fillers[r][s]
};

class DZSpecError : public std::invalid_argument {
public:
  DZSpecError(const std::vector<std::string>& problems)
      : std::invalid_argument(join(problems)), problems_(problems)
  {}
  const std::vector<std::string>& problems() const { return problems_; }

private:
  static std::string join(const std::vector<std::string>& ps)
  {
    std::string s = "invalid DZ spec";
    for (const auto& p : ps) s += "\n  " + p;
    return s;
  }
  std::vector<std::string> problems_;
};

// {"i": [v...], "j": [v...], "F": [["0" | "id" | "arrow:<name>", ...], ...]}
inline DZSpec parse_dz_spec(std::string_view text)
{
  using detail::member;
  using detail::string_at;
  const nlohmann::json doc = detail::parse_json(text);
  DZSpec spec;
  for (const char* key : {"i", "j"}) {
    const auto& arr = member(doc, key, "");
    const std::string at = std::string("/") + key;
    if (!arr.is_array()) throw ParseError(at, "expected an array");
    auto& out = key[0] == 'i' ? spec.i_tuple : spec.j_tuple;
    for (std::size_t n = 0; n < arr.size(); ++n) out.push_back(string_at(arr[n], at + "/" + std::to_string(n)));
  }
  const auto& rows = member(doc, "F", "");
  if (!rows.is_array()) throw ParseError("/F", "expected an array of rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string at = "/F/" + std::to_string(r);
    if (!rows[r].is_array()) throw ParseError(at, "expected an array");
    std::vector<Filler> row;
    for (std::size_t s = 0; s < rows[r].size(); ++s) {
      const std::string cell = string_at(rows[r][s], at + "/" + std::to_string(s));
      if (cell == "0") row.push_back(Filler::zero());
      else if (cell == "id") row.push_back(Filler::identity());
      else if (cell.starts_with("arrow:") && cell.size() > 6) row.push_back(Filler::of(cell.substr(6)));
      else throw ParseError(at + "/" + std::to_string(s), "expected \"0\", \"id\" or \"arrow:<name>\"");
    }
    spec.fillers.push_back(std::move(row));
  }
  return spec;
}

inline void validate_dz_spec(const DZSpec& spec, const Quiver& q, const DimensionVector& dims)
{
  std::vector<std::string> problems;
  auto dim_of = [&](const std::string& v) -> int {
    auto it = dims.find(v);
    return it == dims.end() ? 0 : it->second;
  };
  int row_total = 0, col_total = 0;
  for (const auto& v : spec.i_tuple) {
    if (!q.has_vertex(v)) problems.push_back("i: unknown vertex \"" + v + "\"");
    col_total += dim_of(v);
  }
  for (const auto& v : spec.j_tuple) {
    if (!q.has_vertex(v)) problems.push_back("j: unknown vertex \"" + v + "\"");
    row_total += dim_of(v);
  }
  if (row_total != col_total)
    problems.push_back("dimension sums differ: j gives " + std::to_string(row_total) + ", i gives " +
                       std::to_string(col_total));
  if (spec.fillers.size() != spec.j_tuple.size())
    problems.push_back("F has " + std::to_string(spec.fillers.size()) + " rows, expected |j| = " +
                       std::to_string(spec.j_tuple.size()));
  for (std::size_t r = 0; r < spec.fillers.size(); ++r) {
    const auto& row = spec.fillers[r];
    if (row.size() != spec.i_tuple.size()) {
      problems.push_back("F row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                         " cells, expected |i| = " + std::to_string(spec.i_tuple.size()));
      continue;
    }
    if (r >= spec.j_tuple.size()) continue;
    for (std::size_t s = 0; s < row.size(); ++s) {
      const std::string cell = "F[" + std::to_string(r + 1) + "][" + std::to_string(s + 1) + "]";
      const std::string& from = spec.i_tuple[s];
      const std::string& to = spec.j_tuple[r];
      const Filler& f = row[s];
      if (f.kind == Filler::Kind::Identity && from != to)
        problems.push_back(cell + ": identity needs i_s = j_r, got " + from + " and " + to);
      if (f.kind == Filler::Kind::Arrow) {
        auto idx = q.find_arrow(f.arrow);
        if (!idx) problems.push_back(cell + ": unknown arrow \"" + f.arrow + "\"");
        else if (q.arrow(*idx).tail != from || q.arrow(*idx).head != to)
          problems.push_back(cell + ": arrow " + f.arrow + " goes " + q.arrow(*idx).tail + " -> " +
                             q.arrow(*idx).head + ", block needs " + from + " -> " + to);
      }
    }
  }
  if (!problems.empty()) throw DZSpecError(problems);
}

inline VarSet block_variables(const DZSpec& spec)
{
  VarSet vs;
  for (std::size_t r = 0; r < spec.j_tuple.size(); ++r)
    for (std::size_t s = 0; s < spec.i_tuple.size(); ++s)
      vs.insert(VarId::block(static_cast<int>(r + 1), static_cast<int>(s + 1)));
  return vs;
}

// The block matrix with (r, s) block y_{rs} F_{rs}.
inline Matrix build_dz_matrix(const DZSpec& spec, const Representation& rep)
{
  validate_dz_spec(spec, rep.quiver, rep.dims);
  std::vector<std::size_t> row_off{0}, col_off{0};
  for (const auto& v : spec.j_tuple) row_off.push_back(row_off.back() + static_cast<std::size_t>(rep.dim(v)));
  for (const auto& v : spec.i_tuple) col_off.push_back(col_off.back() + static_cast<std::size_t>(rep.dim(v)));

  Matrix z(row_off.back(), col_off.back());
  for (std::size_t r = 0; r < spec.j_tuple.size(); ++r)
    for (std::size_t s = 0; s < spec.i_tuple.size(); ++s) {
      const Filler& f = spec.fillers[r][s];
      if (f.kind == Filler::Kind::Zero) continue;
      const Polynomial y = Polynomial::var(VarId::block(static_cast<int>(r + 1), static_cast<int>(s + 1)));
      const std::size_t h = row_off[r + 1] - row_off[r], w = col_off[s + 1] - col_off[s];
      const Matrix block = f.kind == Filler::Kind::Identity ? Matrix::identity(h) : rep.matrix(f.arrow);
      for (std::size_t p = 0; p < h; ++p)
        for (std::size_t c = 0; c < w; ++c)
          if (!block(p, c).is_zero()) z(row_off[r] + p, col_off[s] + c) = block(p, c) * y;
    }
  return z;
}

struct SemiInvariant {
  Monomial multidegree; // y-monomial mu
  Polynomial value;     // h_mu
};

// All nonzero coefficients of the y-expansion of the DZ determinant.
inline std::vector<SemiInvariant> extract_semiinvariants(const DZSpec& spec, const Representation& rep)
{
  const Polynomial det = determinant(build_dz_matrix(spec, rep));
  std::vector<SemiInvariant> out;
  for (auto& [mu, h] : group_by(det, block_variables(spec))) out.push_back(SemiInvariant{mu, h});
  return out;
}

// Blocks (r, s), 0-based, listed with multiplicity.
inline std::vector<std::pair<int, int>> blocks_of(const Monomial& mu)
{
  std::vector<std::pair<int, int>> blocks;
  for (const auto& [v, e] : mu.factors())
    for (unsigned i = 0; i < e; ++i) blocks.emplace_back(v.first - 1, v.second - 1);
  return blocks;
}

// Route-set form of the coefficient at mu when every block is 2x2 and mu picks exactly
// two blocks in each block row and block column: the product over the associated route set
// of (-1)^(l/2 - 1) 2^(-nu) tr P.
inline Polynomial route_product_coefficient(const DZSpec& spec, const Representation& rep, const Monomial& mu)
{
  const std::size_t k = spec.i_tuple.size();
  if (spec.j_tuple.size() != k) throw std::invalid_argument("route_product_coefficient: block grid must be square");
  for (const auto& v : spec.i_tuple)
    if (rep.dim(v) != 2) throw DimensionError("route_product_coefficient: needs 2-dimensional blocks");
  for (const auto& v : spec.j_tuple)
    if (rep.dim(v) != 2) throw DimensionError("route_product_coefficient: needs 2-dimensional blocks");
  BlockMatrix z(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s) {
      const Filler& f = spec.fillers[r][s];
      if (f.kind == Filler::Kind::Identity) z.set_block(r, s, Matrix::identity(2));
      else if (f.kind == Filler::Kind::Arrow) z.set_block(r, s, rep.matrix(f.arrow));
    }
  const BlockRouteSet set = associated_route_set(permutation_for_blocks(blocks_of(mu), static_cast<int>(k)));
  return route_set_term(set, z);
}

////////////////////////////////
// Membership in trace algebra //
////////////////////////////////

using ArrowDegrees = std::map<std::string, int>;

class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Degree of h in each arrow's variables; h must be homogeneous in every arrow block.
inline ArrowDegrees arrow_multidegree(const Polynomial& h, const Representation& rep)
{
  if (h.is_zero()) throw std::invalid_argument("arrow_multidegree: zero polynomial");
  ArrowDegrees deg;
  for (const auto& a : rep.quiver.arrows()) {
    const VarSet vs = arrow_variables(rep, a.name);
    const int hi = degree_in(h, vs), lo = low_degree_in(h, vs);
    if (hi != lo)
      throw std::invalid_argument("arrow_multidegree: polynomial is not homogeneous in the entries of " + a.name);
    deg[a.name] = hi;
  }
  return deg;
}

struct MembershipBasis {
  std::vector<std::vector<std::size_t>> products; // multisets of generator indices
  bool truncated = false;                         // some branch needed more than max_factors
};

// Products of generators (at most max_factors of them) whose per-arrow degrees add up to target.
inline MembershipBasis membership_basis(const ArrowDegrees& target, const std::vector<ArrowDegrees>& gen_degrees,
                                        int max_factors)
{
  MembershipBasis basis;
  std::vector<std::size_t> chosen;
  ArrowDegrees remaining = target;

  auto fits = [&](const ArrowDegrees& d) {
    for (const auto& [a, n] : d)
      if (n > remaining.at(a)) return false;
    return true;
  };
  auto done = [&] {
    for (const auto& [a, n] : remaining)
      if (n) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (done()) {
      basis.products.push_back(chosen);
      return;
    }
    if (static_cast<int>(chosen.size()) == max_factors) {
      basis.truncated = true;
      return;
    }
    for (std::size_t g = from; g < gen_degrees.size(); ++g) {
      if (!fits(gen_degrees[g])) continue;
      bool empty = true;
      for (const auto& [a, n] : gen_degrees[g]) {
        remaining[a] -= n;
        empty = empty && n == 0;
      }
      if (!empty) {
        chosen.push_back(g);
        self(self, g);
        chosen.pop_back();
      }
      for (const auto& [a, n] : gen_degrees[g]) remaining[a] += n;
    }
  };
  rec(rec, 0);
  return basis;
}

struct MembershipOptions {
  int max_factors = 6;
};

// Exact rational combination of products of generator traces equal to h, or nullopt.
// Throws CapacityError when nothing was found and the product-length cap cut the search.
inline std::optional<TraceExpr> membership_in_trace_algebra(const Polynomial& h, const std::vector<RouteClass>& gens,
                                                            const Representation& rep, MembershipOptions opts = {})
{
  const ArrowDegrees target = arrow_multidegree(h, rep);
  std::vector<ArrowDegrees> degrees;
  for (const auto& g : gens) degrees.push_back(route_multidegree(g.canonical, rep.quiver, rep.dims));
  const MembershipBasis basis = membership_basis(target, degrees, opts.max_factors);

  std::map<std::size_t, Polynomial> traces;
  auto trace_of = [&](std::size_t g) -> const Polynomial& {
    auto it = traces.find(g);
    if (it == traces.end()) it = traces.emplace(g, route_trace(gens[g].canonical, rep)).first;
    return it->second;
  };
  std::vector<Polynomial> columns;
  for (const auto& prod : basis.products) {
    Polynomial p(1);
    for (std::size_t g : prod) p *= trace_of(g);
    columns.push_back(std::move(p));
  }

  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  auto row = [&](const Monomial& m) {
    return row_of.try_emplace(m, row_of.size()).first->second;
  };
  for (const auto& t : h.terms()) row(t.first);
  for (const auto& c : columns)
    for (const auto& t : c.terms()) row(t.first);

  std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(columns.size()));
  std::vector<Rational> b(row_of.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [m, c] : columns[j].terms()) a[row_of.at(m)][j] = c;
  for (const auto& [m, c] : h.terms()) b[row_of.at(m)] = c;

  auto x = columns.empty() ? std::nullopt : solve_exact(std::move(a), std::move(b));
  if (!x) {
    if (basis.truncated)
      throw CapacityError("membership: no combination with at most " + std::to_string(opts.max_factors) +
                          " factors per product; raise the cap");
    return std::nullopt;
  }

  std::map<std::size_t, int> symbol_of;
  TraceExpr out;
  for (std::size_t j = 0; j < basis.products.size(); ++j) {
    if ((*x)[j] == 0) continue;
    Polynomial term((*x)[j]);
    for (std::size_t g : basis.products[j]) {
      auto [it, inserted] = symbol_of.try_emplace(g, static_cast<int>(out.symbols.size()));
      if (inserted) out.symbols.push_back(gens[g]);
      term *= Polynomial::var(VarId::aux(it->second));
    }
    out.expr += term;
  }
  return out;
}

/////////////////////////////////////
// Dimension-3 counterexample      //
/////////////////////////////////////

struct CounterexampleFixture {
  Quiver quiver;
  DimensionVector dims;
  DZSpec spec;
};

// Arrows a: 1->2, b1: 2->3, b2: 3->2, c: 3->4, d: 1->4, u: 1->3, v: 2->4; dims all 3;
// Z = [[y11 a, y12 E, y13 b2], [y21 u, y22 b1, y23 E], [y31 d, y32 v, y33 c]].
inline CounterexampleFixture counterexample_fixture()
{
  Quiver q({"1", "2", "3", "4"}, {{"a", "1", "2"},
                                  {"b1", "2", "3"},
                                  {"b2", "3", "2"},
                                  {"c", "3", "4"},
                                  {"d", "1", "4"},
                                  {"u", "1", "3"},
                                  {"v", "2", "4"}});
  DZSpec spec{{"1", "2", "3"},
              {"2", "3", "4"},
              {{Filler::of("a"), Filler::identity(), Filler::of("b2")},
               {Filler::of("u"), Filler::of("b1"), Filler::identity()},
               {Filler::of("d"), Filler::of("v"), Filler::of("c")}}};
  DimensionVector dims = uniform_dims(q, 3);
  return {std::move(q), std::move(dims), std::move(spec)};
}

// Coefficient of prod_{r,s} y_rs in the DZ determinant.
inline Polynomial all_blocks_coefficient(const DZSpec& spec, const Representation& rep)
{
  const VarSet ys = block_variables(spec);
  Monomial all;
  for (const auto& y : ys) all *= Monomial(y);
  return coeff_extract(determinant(build_dz_matrix(spec, rep)), all, ys);
}

struct CounterexampleReport {
  Rational f_value;                          // F at the sample representation
  ArrowDegrees arrow_degree;                 // degree of F in each arrow, one arrow symbolic at a time
  ArrowDegrees arrow_low_degree;             // least such degree (homogeneity)
  Rational value_after;                      // F at g . sample, g_1 = diag(2,1,1)
  std::size_t routes_checked = 0;            // simple routes with a reverse edge
  int min_reverse_degree = -1;               // least trace degree in a reversed arrow's entries
  std::string min_reverse_route;             // a route attaining it
  std::size_t basis_size = 0;                // multidegree-matched trace products
  bool not_found = false;

  bool f_nonzero() const { return f_value != 0; }
  bool degrees_one() const
  {
    for (const auto& [a, d] : arrow_degree)
      if (d != 1 || arrow_low_degree.at(a) != 1) return false;
    return !arrow_degree.empty();
  }
  bool gl_invariance_fails() const { return value_after != f_value; }
  bool reverse_degree_ok() const { return routes_checked > 0 && min_reverse_degree >= 2; }
  bool pass() const { return f_nonzero() && degrees_one() && gl_invariance_fails() && reverse_degree_ok() && not_found; }
};

// Arrow matrices are seeded random rationals; only y (and, per degree check, one arrow) is symbolic.
inline CounterexampleReport counterexample_check(std::uint64_t seed = default_seed)
{
  const CounterexampleFixture fx = counterexample_fixture();
  CounterexampleReport rep_out;

  Rng rng(seed);
  const Representation sample = random_representation(fx.quiver, fx.dims, rng);
  rep_out.f_value = all_blocks_coefficient(fx.spec, sample).constant_value();

  for (const auto& a : fx.quiver.arrows()) {
    Representation slice = sample;
    slice.matrices[a.name] = generic_matrix(a.name, 3, 3);
    const Polynomial f = all_blocks_coefficient(fx.spec, slice);
    const VarSet vs = arrow_variables(slice, a.name);
    rep_out.arrow_degree[a.name] = degree_in(f, vs);
    rep_out.arrow_low_degree[a.name] = low_degree_in(f, vs);
  }

  GroupElement g = GroupElement::identity(fx.dims);
  g.g["1"](0, 0) = Polynomial(2);
  rep_out.value_after = all_blocks_coefficient(fx.spec, act(g, sample)).constant_value();

  const std::vector<RouteClass> routes = enumerate_simple_routes(fx.quiver);
  const auto edges = fx.quiver.doubled_edges();
  // associated matrices of every edge, with one arrow generic at a time
  std::map<std::size_t, std::map<Edge, Matrix>> edge_mats;
  for (std::size_t ai = 0; ai < fx.quiver.arrows().size(); ++ai) {
    const std::string& name = fx.quiver.arrow(ai).name;
    Representation slice = sample;
    slice.matrices[name] = generic_matrix(name, 3, 3);
    for (Edge e : edges) edge_mats[ai].emplace(e, associated_matrix(slice, e));
  }
  for (const auto& rc : routes) {
    std::set<std::size_t> reversed;
    for (Edge e : rc.canonical.edges)
      if (e.reversed) reversed.insert(e.arrow);
    if (reversed.empty()) continue;
    ++rep_out.routes_checked;
    for (std::size_t ai : reversed) {
      const std::string& name = fx.quiver.arrow(ai).name;
      const auto& mats = edge_mats[ai];
      std::vector<Matrix> seq;
      for (Edge e : rc.canonical.edges) seq.push_back(mats.at(e));
      const int d = low_degree_in(product_trace(seq, 3), arrow_variables(sample, name));
      if (rep_out.min_reverse_degree < 0 || d < rep_out.min_reverse_degree) {
        rep_out.min_reverse_degree = d;
        rep_out.min_reverse_route = route_str(fx.quiver, rc.canonical);
      }
    }
  }

  // A route with a repeated edge has degree >= 2 in that arrow, so only simple routes can
  // enter a product of per-arrow degree 1.
  std::vector<ArrowDegrees> degrees;
  for (const auto& rc : routes) degrees.push_back(route_multidegree(rc.canonical, fx.quiver, fx.dims));
  const MembershipBasis basis = membership_basis(rep_out.arrow_degree, degrees, 7);
  rep_out.basis_size = basis.products.size();
  rep_out.not_found = basis.products.empty() && rep_out.f_nonzero() && !basis.truncated;
  return rep_out;
}

} // namespace qsemi

#endif
