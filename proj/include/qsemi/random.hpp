#ifndef QSEMI_RANDOM_HPP
#define QSEMI_RANDOM_HPP

#include "qsemi/matrix.hpp"
#include "qsemi/quiver.hpp"

#include <cstdint>
#include <random>

namespace qsemi {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t default_seed = 0xC0FFEE;

// Independent stream for trial `index` of a run seeded with `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

// Integer in [-9, 9] as a rational.
inline Rational random_small(Rng& rng)
{
  std::uniform_int_distribution<int> d(-9, 9);
  return Rational(d(rng));
}

inline Rational random_nonzero_small(Rng& rng)
{
  Rational r;
  do
    r = random_small(rng);
  while (r == 0);
  return r;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng)
{
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Polynomial(random_small(rng));
  return m;
}

// Square matrices are redrawn until nonsingular when `invertible` is set.
inline Representation random_representation(const Quiver& q, const DimensionVector& dims, Rng& rng,
                                             bool invertible = false)
{
  Representation rep{q, dims, {}};
  for (const auto& a : q.arrows()) {
    const auto rows = static_cast<std::size_t>(rep.dim(a.head));
    const auto cols = static_cast<std::size_t>(rep.dim(a.tail));
    Matrix m = random_matrix(rows, cols, rng);
    while (invertible && rows == cols && determinant(m).is_zero()) m = random_matrix(rows, cols, rng);
    rep.matrices[a.name] = std::move(m);
  }
  return rep;
}

} // namespace qsemi

#endif
