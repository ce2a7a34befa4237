#ifndef QSEMI_GROUP_HPP
#define QSEMI_GROUP_HPP

#include "qsemi/matrix.hpp"
#include "qsemi/poly.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/random.hpp"

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace qsemi {

// One invertible rational matrix per vertex.
struct GroupElement {
  std::map<std::string, Matrix> g;

  const Matrix& at(const std::string& v) const
  {
    auto it = g.find(v);
    if (it == g.end()) throw std::invalid_argument("group element has no component at vertex \"" + v + "\"");
    return it->second;
  }

  Rational det(const std::string& v) const { return determinant(at(v)).constant_value(); }

  bool is_special_linear() const
  {
    for (const auto& [v, m] : g)
      if (determinant(m).constant_value() != 1) return false;
    return true;
  }

  // (this . other)_v = this_v * other_v
  GroupElement compose(const GroupElement& other) const
  {
    GroupElement out;
    for (const auto& [v, m] : g) out.g[v] = m * other.at(v);
    return out;
  }

  static GroupElement identity(const DimensionVector& dims)
  {
    GroupElement out;
    for (const auto& [v, n] : dims) out.g[v] = Matrix::identity(static_cast<std::size_t>(n));
    return out;
  }
};

enum class GroupKind { SpecialLinear, GeneralLinear };

namespace detail {

// Product of 4-8 unit-diagonal shears; determinant exactly 1.
inline Matrix random_shear_product(std::size_t n, Rng& rng)
{
  Matrix m = Matrix::identity(n);
  if (n < 2) return m;
  std::uniform_int_distribution<int> count(4, 8);
  std::uniform_int_distribution<std::size_t> index(0, n - 1);
  const int shears = count(rng);
  for (int s = 0; s < shears; ++s) {
    std::size_t i = index(rng), j = index(rng);
    while (j == i) j = index(rng);
    Matrix e = Matrix::identity(n);
    e(i, j) = Polynomial(random_nonzero_small(rng));
    m = m * e;
  }
  return m;
}

inline Rational random_diagonal_entry(Rng& rng)
{
  static const Rational choices[] = {Rational(1), Rational(-1), Rational(2), Rational(-2),
                                     Rational(3), Rational(-3), Rational(1, 2), Rational(-1, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(choices) - 1);
  return choices[pick(rng)];
}

} // namespace detail

inline GroupElement random_special_linear(const DimensionVector& dims, std::uint64_t seed)
{
  Rng rng(seed);
  GroupElement out;
  for (const auto& [v, n] : dims) out.g[v] = detail::random_shear_product(static_cast<std::size_t>(n), rng);
  return out;
}

// Shear product times a diagonal with entries in {+-1, +-2, +-3, +-1/2}.
inline GroupElement random_general_linear(const DimensionVector& dims, std::uint64_t seed)
{
  Rng rng(seed);
  GroupElement out;
  for (const auto& [v, n] : dims) {
    const auto size = static_cast<std::size_t>(n);
    Matrix d = Matrix::identity(size);
    for (std::size_t i = 0; i < size; ++i) d(i, i) = Polynomial(detail::random_diagonal_entry(rng));
    out.g[v] = detail::random_shear_product(size, rng) * d;
  }
  return out;
}

inline GroupElement random_group_element(GroupKind kind, const DimensionVector& dims, std::uint64_t seed)
{
  return kind == GroupKind::SpecialLinear ? random_special_linear(dims, seed) : random_general_linear(dims, seed);
}

// (g . phi)_a = g_{head a} phi_a g_{tail a}^{-1}
inline Representation act(const GroupElement& g, const Representation& rep)
{
  std::map<std::string, Matrix> inverses;
  for (const auto& v : rep.quiver.vertices()) {
    const Matrix& gv = g.at(v);
    if (gv.rows() != static_cast<std::size_t>(rep.dim(v)) || !gv.is_square())
      throw DimensionError("group element at vertex \"" + v + "\" has the wrong size");
    try {
      inverses.emplace(v, inverse_constant(gv));
    }
    catch (const std::domain_error&) {
      throw std::domain_error("group element at vertex \"" + v + "\" is not invertible");
    }
  }
  Representation out{rep.quiver, rep.dims, {}};
  for (const auto& a : rep.quiver.arrows())
    out.matrices[a.name] = g.at(a.head) * rep.matrix(a.name) * inverses.at(a.tail);
  return out;
}

// prod_v det(g_v)^{w_v}
inline Rational character(const GroupElement& g, const std::map<std::string, int>& weight)
{
  Rational c(1);
  for (const auto& [v, w] : weight) {
    if (w == 0) continue;
    Rational d = g.det(v);
    for (int i = 0; i < (w > 0 ? w : -w); ++i) c = w > 0 ? Rational(c * d) : Rational(c / d);
  }
  return c;
}

struct SemiInvarianceFailure {
  GroupElement g;
  Polynomial expected; // character(g) * f(rep)
  Polynomial actual;   // f(g . rep)
};

struct SemiInvarianceResult {
  int trials = 0;
  std::optional<SemiInvarianceFailure> failure;
  bool pass() const { return !failure; }
};

// Checks f(g . rep) = chi_w(g) f(rep) exactly for `trials` sampled group elements.
// With the special-linear sampler the character is 1 and `weight` is ignored.
// `rep` may be concrete or symbolic; a symbolic rep gives an identity check per trial.
inline SemiInvarianceResult check_semiinvariance(const Polynomial& f, const std::map<std::string, int>& weight,
                                                 const Representation& rep, int trials, std::uint64_t seed,
                                                 GroupKind kind = GroupKind::GeneralLinear)
{
  SemiInvarianceResult result;
  const Polynomial before = evaluate_at(f, rep);
  for (int t = 0; t < trials; ++t) {
    GroupElement g = random_group_element(kind, rep.dims, derive_seed(seed, static_cast<std::uint64_t>(t)));
    Polynomial expected = before;
    if (kind == GroupKind::GeneralLinear) expected.scale(character(g, weight));
    Polynomial actual = evaluate_at(f, act(g, rep));
    ++result.trials;
    if (actual != expected) {
      result.failure = SemiInvarianceFailure{std::move(g), std::move(expected), std::move(actual)};
      break;
    }
  }
  return result;
}

} // namespace qsemi

#endif
