#pragma once

#include <vector>

#include "efie/mesh.hpp"

namespace efie {

struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [0, 1].
GaussRule gauss_legendre(int n);

// Rule on the reference triangle; weights sum to 1/2.
struct TriangleRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Symmetric rules for degree <= 6 (1, 3, 4, 6, 7, 12 points), collapsed
// Gauss-Legendre products above.
TriangleRule triangle_rule(int degree);

}  // namespace efie
