#ifndef QSEMI_FIXTURES_HPP
#define QSEMI_FIXTURES_HPP

#include "qsemi/domzub.hpp"
#include "qsemi/quiver.hpp"

namespace qsemi::fixtures {

// 1 =a,b=> 2
inline Quiver kronecker() { return Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }

inline Quiver one_loop() { return Quiver({"1"}, {{"a", "1", "1"}}); }

// a: 1 -> 2, b: 2 -> 1
inline Quiver two_cycle() { return Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}); }

// Oriented triangle 1 -> 2 -> 3 -> 1 with a chord d: 1 -> 3.
inline Quiver three_vertex() { return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}, {"d", "1", "3"}}); }

// Four vertices; (c, d) closes at head(a) = 2.
inline Quiver four_vertex() { return Quiver({"1", "2", "3", "4"}, {{"a", "1", "2"}, {"b", "2", "1"}, {"c", "2", "3"}, {"d", "3", "2"}, {"e", "1", "4"}}); }

// [[y11 a, y12 b], [y21 a, y22 b]] from i = (1, 1) to j = (2, 2).
inline DZSpec kronecker_dz()
{
  return DZSpec{{"1", "1"}, {"2", "2"}, {{Filler::of("a"), Filler::of("b")}, {Filler::of("a"), Filler::of("b")}}};
}

// [[y11 a, y12 b], [y21 b, y22 a]]
inline DZSpec kronecker_dz_crossed()
{
  return DZSpec{{"1", "1"}, {"2", "2"}, {{Filler::of("a"), Filler::of("b")}, {Filler::of("b"), Filler::of("a")}}};
}

} // namespace qsemi::fixtures

#endif
