#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qtda/complex.hpp"
#include "support/oracles.hpp"

namespace fixture {

using oracle::simplex;
using qtda::SimplicialComplex;
using qtda::SimplicialPair;
using qtda::VertexMask;

inline SimplicialComplex hollow_triangle() {
  const std::vector<VertexMask> s{simplex({0, 1}), simplex({1, 2}), simplex({0, 2})};
  return SimplicialComplex::from_simplices(3, s);
}

inline SimplicialComplex filled_triangle() {
  const std::vector<VertexMask> s{simplex({0, 1, 2})};
  return SimplicialComplex::from_simplices(3, s);
}

inline SimplicialComplex tetrahedron_boundary() {
  const std::vector<VertexMask> s{simplex({0, 1, 2}), simplex({0, 1, 3}), simplex({0, 2, 3}), simplex({1, 2, 3})};
  return SimplicialComplex::from_simplices(4, s);
}

inline SimplicialComplex two_hollow_triangles() {
  const std::vector<VertexMask> s{simplex({0, 1}), simplex({1, 2}), simplex({0, 2}),
                                  simplex({3, 4}), simplex({4, 5}), simplex({3, 5})};
  return SimplicialComplex::from_simplices(6, s);
}

/// First triangle filled, second left hollow.
inline SimplicialComplex two_triangles_one_filled() {
  const std::vector<VertexMask> s{simplex({0, 1, 2}), simplex({3, 4}), simplex({4, 5}), simplex({3, 5})};
  return SimplicialComplex::from_simplices(6, s);
}

inline SimplicialComplex path3() {
  const std::vector<VertexMask> s{simplex({0, 1}), simplex({1, 2})};
  return SimplicialComplex::from_simplices(3, s);
}

/// Square 0-1-2-3 with diagonal 0-2.
inline SimplicialComplex square_with_diagonal() {
  const std::vector<VertexMask> s{simplex({0, 1}), simplex({1, 2}), simplex({2, 3}), simplex({0, 3}),
                                  simplex({0, 2})};
  return SimplicialComplex::from_simplices(4, s);
}

/// Square with diagonal and the triangle 0-1-2 filled.
inline SimplicialComplex square_one_triangle() {
  const std::vector<VertexMask> s{simplex({0, 1, 2}), simplex({2, 3}), simplex({0, 3})};
  return SimplicialComplex::from_simplices(4, s);
}

inline qtda::PointCloud circle(int n, double radius) {
  qtda::PointCloud c;
  c.points.resize(n, 2);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    c.points(i, 0) = radius * std::cos(a);
    c.points(i, 1) = radius * std::sin(a);
  }
  return c;
}

/// Eight points on a circle of radius 1.5; at scales 0.8 and 0.9 both complexes are the bare 8-cycle.
inline SimplicialPair circle8_pair(int max_dim = 2) {
  const auto cloud = circle(8, 1.5);
  return SimplicialPair(qtda::build_vietoris_rips(cloud, 0.8, max_dim), qtda::build_vietoris_rips(cloud, 0.9, max_dim));
}

struct Named {
  std::string name;
  SimplicialPair pair;
  int q;
  std::size_t expected_betti;
};

/// The known-topology fixtures with their exact (persistent) Betti numbers.
inline std::vector<Named> known_topology() {
  return {
      {"hollow triangle", SimplicialPair(hollow_triangle(), hollow_triangle()), 1, 1},
      {"filled triangle", SimplicialPair(filled_triangle(), filled_triangle()), 1, 0},
      {"tetrahedron boundary", SimplicialPair(tetrahedron_boundary(), tetrahedron_boundary()), 2, 1},
      {"hollow to filled triangle", SimplicialPair(hollow_triangle(), filled_triangle()), 1, 0},
      {"circle-8 Vietoris-Rips pair", circle8_pair(), 1, 1},
  };
}

}  // namespace fixture
