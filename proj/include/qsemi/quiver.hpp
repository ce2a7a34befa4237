#ifndef QSEMI_QUIVER_HPP
#define QSEMI_QUIVER_HPP

#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"

#include <json.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsemi {

// Malformed input; `where` is "line L, column C" for syntax errors or a JSON pointer.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where))
  {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

struct Arrow {
  std::string name;
  std::string tail;
  std::string head;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// An edge of the doubled quiver: arrow `arrow` or its reverse partner.
// Ordered with every base arrow before every reverse arrow.
struct Edge {
  bool reversed = false;
  std::size_t arrow = 0;

  Edge partner() const { return Edge{!reversed, arrow}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Quiver {
public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows))
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (!seen.insert(vertices_[i]).second)
        throw ParseError("/vertices/" + std::to_string(i), "duplicate vertex \"" + vertices_[i] + "\"");
    std::set<std::string> names;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const auto& a = arrows_[i];
      const std::string at = "/arrows/" + std::to_string(i);
      if (a.name.empty()) throw ParseError(at + "/name", "empty arrow name");
      if (!names.insert(a.name).second) throw ParseError(at + "/name", "duplicate arrow id \"" + a.name + "\"");
      if (!seen.count(a.tail)) throw ParseError(at + "/tail", "dangling vertex \"" + a.tail + "\"");
      if (!seen.count(a.head)) throw ParseError(at + "/head", "dangling vertex \"" + a.head + "\"");
    }
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t arrow_count() const { return arrows_.size(); }

  bool has_vertex(std::string_view v) const
  {
    for (const auto& x : vertices_)
      if (x == v) return true;
    return false;
  }

  std::optional<std::size_t> find_arrow(std::string_view name) const
  {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return i;
    return std::nullopt;
  }

  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  const Arrow& arrow(std::string_view name) const
  {
    auto i = find_arrow(name);
    if (!i) throw std::invalid_argument("unknown arrow \"" + std::string(name) + "\"");
    return arrows_[*i];
  }

  // Incidence in the doubled quiver.
  const std::string& tail(Edge e) const { return e.reversed ? arrows_.at(e.arrow).head : arrows_.at(e.arrow).tail; }
  const std::string& head(Edge e) const { return e.reversed ? arrows_.at(e.arrow).tail : arrows_.at(e.arrow).head; }

  // Identifier in the doubled quiver: `a` or `rev_a`.
  std::string edge_id(Edge e) const { return (e.reversed ? "rev_" : "") + arrows_.at(e.arrow).name; }
  // Short form used in route text: `a` or `~a`.
  std::string edge_label(Edge e) const { return (e.reversed ? "~" : "") + arrows_.at(e.arrow).name; }

  Edge parse_edge(std::string_view text) const
  {
    if (auto i = find_arrow(text)) return Edge{false, *i};
    std::string_view rest;
    if (text.starts_with("~")) rest = text.substr(1);
    else if (text.starts_with("rev_")) rest = text.substr(4);
    if (!rest.empty())
      if (auto i = find_arrow(rest)) return Edge{true, *i};
    throw ParseError({}, "unknown edge \"" + std::string(text) + "\"");
  }

  std::vector<Edge> doubled_edges() const
  {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < arrows_.size(); ++i) es.push_back(Edge{false, i});
    for (std::size_t i = 0; i < arrows_.size(); ++i) es.push_back(Edge{true, i});
    return es;
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

// The doubled quiver: base arrows followed by one reverse arrow `rev_<a>` per arrow.
struct DoubledQuiver {
  Quiver base;
  std::vector<Edge> edges;
  std::vector<Arrow> incidence; // (edge id, tail, head) per entry of `edges`
};

inline DoubledQuiver double_quiver(const Quiver& q)
{
  DoubledQuiver d{q, q.doubled_edges(), {}};
  for (Edge e : d.edges) d.incidence.push_back(Arrow{q.edge_id(e), q.tail(e), q.head(e)});
  return d;
}

using DimensionVector = std::map<std::string, int>;

inline DimensionVector uniform_dims(const Quiver& q, int n)
{
  DimensionVector d;
  for (const auto& v : q.vertices()) d[v] = n;
  return d;
}

inline bool all_dims_equal(const DimensionVector& dims, int n)
{
  for (const auto& [v, d] : dims)
    if (d != n) return false;
  return true;
}

struct QuiverFile {
  Quiver quiver;
  DimensionVector dims;
};

namespace detail {

inline std::string line_column(std::string_view text, std::size_t byte)
{
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    }
    else
      ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline nlohmann::json parse_json(std::string_view text)
{
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  }
  catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports the 1-based byte index of the offending character
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(line_column(text, byte), "malformed JSON");
  }
}

inline const nlohmann::json& member(const nlohmann::json& obj, const char* key, const std::string& at)
{
  if (!obj.is_object()) throw ParseError(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::string string_at(const nlohmann::json& j, const std::string& at)
{
  if (!j.is_string()) throw ParseError(at, "expected a string");
  return j.get<std::string>();
}

} // namespace detail

// {"vertices": [...], "arrows": [{"name","tail","head"}...], "dims": {v: n}?}
inline QuiverFile parse_quiver_file(std::string_view text)
{
  using detail::member;
  using detail::string_at;
  const nlohmann::json doc = detail::parse_json(text);

  const auto& vs = member(doc, "vertices", "");
  if (!vs.is_array()) throw ParseError("/vertices", "expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    vertices.push_back(string_at(vs[i], "/vertices/" + std::to_string(i)));

  std::vector<Arrow> arrows;
  if (doc.contains("arrows")) {
    const auto& as = doc["arrows"];
    if (!as.is_array()) throw ParseError("/arrows", "expected an array");
    for (std::size_t i = 0; i < as.size(); ++i) {
      const std::string at = "/arrows/" + std::to_string(i);
      arrows.push_back(Arrow{string_at(member(as[i], "name", at), at + "/name"),
                             string_at(member(as[i], "tail", at), at + "/tail"),
                             string_at(member(as[i], "head", at), at + "/head")});
    }
  }

  QuiverFile out{Quiver(std::move(vertices), std::move(arrows)), {}};
  out.dims = uniform_dims(out.quiver, 2);
  if (doc.contains("dims")) {
    const auto& ds = doc["dims"];
    if (!ds.is_object()) throw ParseError("/dims", "expected an object");
    for (const auto& [v, n] : ds.items()) {
      const std::string at = "/dims/" + v;
      if (!out.quiver.has_vertex(v)) throw ParseError(at, "dangling vertex \"" + v + "\"");
      if (!n.is_number_integer() || n.get<long long>() <= 0) throw ParseError(at, "expected a positive integer");
      out.dims[v] = static_cast<int>(n.get<long long>());
    }
  }
  return out;
}

inline Quiver parse_quiver(std::string_view text) { return parse_quiver_file(text).quiver; }

/////////////////////
// Representations //
/////////////////////

struct Representation {
  Quiver quiver;
  DimensionVector dims;
  std::map<std::string, Matrix> matrices; // by arrow name; rows = dim(head), cols = dim(tail)

  int dim(const std::string& v) const
  {
    auto it = dims.find(v);
    if (it == dims.end()) throw std::invalid_argument("no dimension for vertex \"" + v + "\"");
    return it->second;
  }

  const Matrix& matrix(const std::string& arrow) const
  {
    auto it = matrices.find(arrow);
    if (it == matrices.end()) throw std::invalid_argument("no matrix for arrow \"" + arrow + "\"");
    return it->second;
  }

  void validate() const
  {
    for (const auto& v : quiver.vertices())
      if (dim(v) <= 0) throw DimensionError("vertex \"" + v + "\" has non-positive dimension");
    for (const auto& a : quiver.arrows()) {
      const Matrix& m = matrix(a.name);
      if (m.rows() != static_cast<std::size_t>(dim(a.head)) || m.cols() != static_cast<std::size_t>(dim(a.tail)))
        throw DimensionError("arrow \"" + a.name + "\" has a " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " matrix, expected dim(head) x dim(tail)");
    }
  }

  friend bool operator==(const Representation&, const Representation&) = default;
};

inline Matrix generic_matrix(const std::string& arrow, std::size_t rows, std::size_t cols)
{
  Matrix m(rows, cols);
  for (std::size_t p = 0; p < rows; ++p)
    for (std::size_t q = 0; q < cols; ++q)
      m(p, q) = Polynomial::var(VarId::entry(arrow, static_cast<int>(p + 1), static_cast<int>(q + 1)));
  return m;
}

inline VarSet arrow_variables(const Representation& rep, const std::string& arrow)
{
  const Arrow& a = rep.quiver.arrow(arrow);
  VarSet vs;
  for (int p = 1; p <= rep.dim(a.head); ++p)
    for (int q = 1; q <= rep.dim(a.tail); ++q) vs.insert(VarId::entry(arrow, p, q));
  return vs;
}

inline Representation generic_representation(const Quiver& q, const DimensionVector& dims)
{
  Representation rep{q, dims, {}};
  for (const auto& a : q.arrows())
    rep.matrices[a.name] = generic_matrix(a.name, static_cast<std::size_t>(rep.dim(a.head)),
                                          static_cast<std::size_t>(rep.dim(a.tail)));
  rep.validate();
  return rep;
}

// Matrix of an edge in the associated representation: phi_a, or adj(phi_a) for the reverse edge.
inline Matrix associated_matrix(const Representation& rep, Edge e)
{
  const Arrow& a = rep.quiver.arrow(e.arrow);
  const Matrix& m = rep.matrix(a.name);
  if (!e.reversed) return m;
  if (!m.is_square())
    throw DimensionError("associated matrix of " + rep.quiver.edge_id(e) + " is undefined: phi_" + a.name +
                         " is not square");
  return adjugate(m);
}

// Bindings sending each generic entry variable x_a_p_q to the entry of `rep`.
inline Bindings entry_bindings(const Representation& rep)
{
  Bindings b;
  for (const auto& [name, m] : rep.matrices)
    for (std::size_t p = 0; p < m.rows(); ++p)
      for (std::size_t q = 0; q < m.cols(); ++q)
        b.emplace(VarId::entry(name, static_cast<int>(p + 1), static_cast<int>(q + 1)), m(p, q));
  return b;
}

// Evaluates a polynomial in generic entry variables at `rep`.
inline Polynomial evaluate_at(const Polynomial& f, const Representation& rep)
{
  return substitute(f, entry_bindings(rep));
}

} // namespace qsemi

#endif
