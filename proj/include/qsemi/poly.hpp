#ifndef QSEMI_POLY_HPP
#define QSEMI_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsemi {

using Rational = mpq_class;

inline std::string rational_str(const Rational& q)
{
  // mpq_class prints canonical p/q and omits /1
  return q.get_str();
}

/////////////////
// Variables   //
/////////////////

enum class VarKind : std::uint8_t { ArrowEntry = 0, BlockVar = 1, Aux = 2 };

// Indices are 1-based labels, matching the canonical text form.
struct VarId {
  VarKind kind = VarKind::Aux;
  std::string arrow;
  int first = 0;
  int second = 0;

  static VarId entry(std::string arrow, int row, int col)
  {
    return VarId{VarKind::ArrowEntry, std::move(arrow), row, col};
  }
  static VarId block(int r, int s) { return VarId{VarKind::BlockVar, {}, r, s}; }
  static VarId aux(int index) { return VarId{VarKind::Aux, {}, index, 0}; }

  std::string str() const
  {
    switch (kind) {
    case VarKind::ArrowEntry:
      return "x_" + arrow + "_" + std::to_string(first) + "_" + std::to_string(second);
    case VarKind::BlockVar:
      return "y_" + std::to_string(first) + "_" + std::to_string(second);
    case VarKind::Aux:
      break;
    }
    return "t_" + std::to_string(first);
  }

  friend bool operator==(const VarId&, const VarId&) = default;
  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b)
  {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.arrow.compare(b.arrow); c != 0) return c < 0 ? std::strong_ordering::less
                                                                 : std::strong_ordering::greater;
    if (auto c = a.first <=> b.first; c != 0) return c;
    return a.second <=> b.second;
  }
};

using VarSet = std::set<VarId>;

/////////////////
// Monomials   //
/////////////////

// Sorted (by VarId) sequence of (variable, positive exponent).
class Monomial {
public:
  using Factor = std::pair<VarId, unsigned>;

  Monomial() = default;

  explicit Monomial(const VarId& v, unsigned exponent = 1)
  {
    if (exponent > 0) factors_.emplace_back(v, exponent);
  }

  Monomial(std::initializer_list<Factor> factors)
  {
    for (const auto& f : factors) *this *= Monomial(f.first, f.second);
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  unsigned degree() const
  {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  unsigned degree_in(const VarSet& vars) const
  {
    unsigned d = 0;
    for (const auto& f : factors_)
      if (vars.count(f.first)) d += f.second;
    return d;
  }

  unsigned exponent(const VarId& v) const
  {
    for (const auto& f : factors_)
      if (f.first == v) return f.second;
    return 0;
  }

  Monomial& operator*=(const Monomial& o)
  {
    std::vector<Factor> out;
    out.reserve(factors_.size() + o.factors_.size());
    auto i = factors_.begin();
    auto j = o.factors_.begin();
    while (i != factors_.end() && j != o.factors_.end()) {
      if (i->first < j->first) out.push_back(*i++);
      else if (j->first < i->first) out.push_back(*j++);
      else {
        out.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    out.insert(out.end(), i, factors_.end());
    out.insert(out.end(), j, o.factors_.end());
    factors_ = std::move(out);
    return *this;
  }

  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  // Splits into the part over `scope` and the remainder.
  std::pair<Monomial, Monomial> split(const VarSet& scope) const
  {
    Monomial in, out;
    for (const auto& f : factors_)
      (scope.count(f.first) ? in : out).factors_.push_back(f);
    return {in, out};
  }

  std::string str() const
  {
    std::string s;
    for (const auto& [v, e] : factors_) {
      if (!s.empty()) s += '*';
      s += v.str();
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  // Graded lexicographic comparison; the least VarId is the most significant variable.
  friend std::strong_ordering grlex(const Monomial& a, const Monomial& b)
  {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    for (; i != a.factors_.end() && j != b.factors_.end(); ++i, ++j) {
      if (i->first != j->first)
        return i->first < j->first ? std::strong_ordering::greater : std::strong_ordering::less;
      if (i->second != j->second) return i->second <=> j->second;
    }
    return std::strong_ordering::equal;
  }

private:
  std::vector<Factor> factors_;
};

// Orders terms from the highest to the lowest in graded-lex order.
struct DescendingGrlex {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex(a, b) > 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const
  {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [v, e] : m.factors()) {
      std::size_t k = std::hash<std::string>{}(v.arrow);
      k ^= (static_cast<std::size_t>(v.kind) << 56) ^ (static_cast<std::size_t>(v.first) << 28) ^
           static_cast<std::size_t>(v.second) ^ (static_cast<std::size_t>(e) << 40);
      h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/////////////////
// Polynomials //
/////////////////

class Polynomial {
public:
  using Terms = std::map<Monomial, Rational, DescendingGrlex>;

  Polynomial() = default;
  Polynomial(const Rational& c) { add_term(Monomial{}, c); }
  Polynomial(long c) : Polynomial(Rational(c)) {}
  Polynomial(int c) : Polynomial(Rational(c)) {}

  static Polynomial var(const VarId& v) { return term(Monomial(v), 1); }
  static Polynomial term(const Monomial& m, const Rational& c)
  {
    Polynomial p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  Rational coefficient(const Monomial& m) const
  {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_value() const { return coefficient(Monomial{}); }

  // Total degree; -1 for zero.
  int degree() const
  {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.first.degree()));
    return d;
  }

  VarSet variables() const
  {
    VarSet vs;
    for (const auto& t : terms_)
      for (const auto& f : t.first.factors()) vs.insert(f.first);
    return vs;
  }

  void add_term(const Monomial& m, const Rational& c)
  {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o)
  {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o)
  {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& scale(const Rational& s)
  {
    if (s == 0) terms_.clear();
    else
      for (auto& t : terms_) t.second *= s;
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o)
  {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a)
  {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    Polynomial r;
    if (a.is_zero() || b.is_zero()) return r;
    if (b.is_constant()) return Polynomial(a).scale(b.constant_value());
    if (a.is_constant()) return Polynomial(b).scale(a.constant_value());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  // Canonical text: descending grlex, `p/q*var*var^2`, joined by " + " / " - ".
  std::string str() const
  {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      }
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      if (m.empty()) os << rational_str(mag);
      else {
        if (mag != 1) os << rational_str(mag) << '*';
        os << m.str();
      }
    }
    return os.str();
  }

private:
  Terms terms_;
};

inline Polynomial pow(const Polynomial& p, unsigned e)
{
  Polynomial r(1);
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

using Bindings = std::map<VarId, Polynomial>;

// Simultaneous substitution; unbound variables stay symbolic.
inline Polynomial substitute(const Polynomial& p, const Bindings& bindings)
{
  std::map<std::pair<VarId, unsigned>, Polynomial> powers;
  auto power = [&](const VarId& v, unsigned e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, pow(bindings.at(v), e)).first->second;
  };

  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial kept;
    Polynomial acc(c);
    for (const auto& [v, e] : m.factors()) {
      if (bindings.count(v)) acc *= power(v, e);
      else kept *= Monomial(v, e);
      if (acc.is_zero()) break;
    }
    if (acc.is_zero()) continue;
    out += acc * Polynomial::term(kept, 1);
  }
  return out;
}

// Views p as a polynomial in `scope` with coefficients in the remaining variables.
using ScopedTerms = std::map<Monomial, Polynomial, DescendingGrlex>;

inline ScopedTerms group_by(const Polynomial& p, const VarSet& scope)
{
  ScopedTerms out;
  for (const auto& [m, c] : p.terms()) {
    auto [in, rest] = m.split(scope);
    out[in].add_term(rest, c);
  }
  return out;
}

inline Polynomial coeff_extract(const Polynomial& p, const Monomial& pattern, const VarSet& scope)
{
  for (const auto& f : pattern.factors())
    if (!scope.count(f.first))
      throw std::invalid_argument("coeff_extract: pattern variable " + f.first.str() +
                                  " is outside the scope");
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    auto [in, rest] = m.split(scope);
    if (in == pattern) out.add_term(rest, c);
  }
  return out;
}

// Maximal total degree over `vars` across terms; -1 for the zero polynomial.
inline int degree_in(const Polynomial& p, const VarSet& vars)
{
  int d = -1;
  for (const auto& t : p.terms()) d = std::max<int>(d, static_cast<int>(t.first.degree_in(vars)));
  return d;
}

// Minimal such degree; -1 for zero. Equal to degree_in iff p is homogeneous in `vars`.
inline int low_degree_in(const Polynomial& p, const VarSet& vars)
{
  if (p.is_zero()) return -1;
  int d = -1;
  for (const auto& t : p.terms()) {
    int e = static_cast<int>(t.first.degree_in(vars));
    d = d < 0 ? e : std::min(d, e);
  }
  return d;
}

} // namespace qsemi

#endif
