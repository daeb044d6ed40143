#pragma once

#include <vector>

#include "coretower/complex_matrix.hpp"
#include "coretower/rips.hpp"

namespace fixture {

using coretower::Simplex;

// Vertices a..f are 0..5.
inline constexpr coretower::VertexId a = 0, b = 1, c = 2, d = 3, e = 4, f = 5;

// Six vertices, maximal simplices bc, be, abd, de, ef (columns 0..4).
inline std::vector<Simplex> worked_example_simplices() {
  return {Simplex{b, c}, Simplex{b, e}, Simplex{a, b, d}, Simplex{d, e}, Simplex{e, f}};
}

inline coretower::ComplexMatrix worked_example() {
  const auto s = worked_example_simplices();
  return coretower::ComplexMatrix::from_simplex_list(s);
}

inline std::vector<coretower::Point> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

inline coretower::ComplexMatrix matrix_of(std::vector<Simplex> s) {
  return coretower::ComplexMatrix::from_simplex_list(s);
}

}  // namespace fixture
