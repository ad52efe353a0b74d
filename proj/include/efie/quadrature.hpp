#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "efie/mesh.hpp"
#include "efie/triangle_rules.hpp"

namespace efie {

using cdouble = std::complex<double>;

enum class PairClass { identical, shared_edge, shared_vertex, near, far };

const char* to_string(PairClass cls);

struct QuadratureConfig {
  // Centroid distance over the larger cell diameter below which a pair is near.
  double near_threshold = 2.5;
  // Polynomial degree of the triangle rule used per cell for far pairs.
  int far_degree = 3;
  // Near pairs use far_degree + near_boost.
  int near_boost = 4;
  // Gauss points per dimension of the Sauter-Schwab cube rules.
  int singular_order = 5;
};

// Defaults tied to the basis order: degree 3 (4 points) for p <= 1, degree 5
// (7 points) above.
QuadratureConfig default_quadrature(int basis_order);

// Vertex-id overlap decides identical / shared_edge / shared_vertex; the rest is
// near or far by centroid distance over max diameter. Symmetric in (a, b).
PairClass classify_pair(const SurfaceMesh& mesh, int a, int b, double near_threshold = 2.5);

// Point pairs (x in cell a, y in cell b) in reference coordinates, weights in
// reference measure (they sum to 1/4).
struct PairRule {
  std::vector<Vec2> x;
  std::vector<Vec2> y;
  std::vector<double> w;

  int size() const { return static_cast<int>(w.size()); }
};

// Sauter-Schwab rule on two reference triangles in the canonical frame where
// coincident corners come first: all three (identical), corners 0 and 1 in the
// same order (shared_edge), corner 0 (shared_vertex).
const PairRule& sauter_schwab_rule(PairClass cls, int order);

// Corner permutations that bring the shared vertices of a and b to the
// canonical frame. perm[i] is the local corner placed at canonical corner i.
struct PairFrame {
  std::array<int, 3> perm_a{0, 1, 2};
  std::array<int, 3> perm_b{0, 1, 2};
};
PairFrame pair_frame(const SurfaceMesh& mesh, int a, int b, PairClass cls);

// Reference point of the original cell for a point given in a permuted frame.
Vec2 unpermute(const std::array<int, 3>& perm, const Vec2& canonical);

// Complete rule for a classified pair in the cells' own reference coordinates.
PairRule pair_rule(const SurfaceMesh& mesh, int a, int b, PairClass cls, const QuadratureConfig& cfg);

// Tensor product of two triangle rules.
PairRule tensor_rule(const TriangleRule& ra, const TriangleRule& rb);

// Scalar Green's kernels. The static part is 1/(4 pi R); the dynamic part
// G - static is finite at R = 0 with limit -jk / (4 pi).
cdouble helmholtz_green(double k, double R);
double static_green(double R);
cdouble dynamic_green(double k, double R);

using PairKernel = std::function<cdouble(const Vec3&, const Vec3&)>;

// Integral of kernel(r, r') over cell a (r) and cell b (r'), surface measure
// included. Pairs with a > b are evaluated with the (b, a) rule and swapped
// arguments, so symmetric kernels give bitwise symmetric results. Throws
// QuadratureError on a non-finite kernel value.
cdouble double_integral(const SurfaceMesh& mesh, int a, int b, const PairKernel& kernel,
                        const QuadratureConfig& cfg);
cdouble double_integral(const SurfaceMesh& mesh, int a, int b, const PairKernel& kernel,
                        PairClass cls, const QuadratureConfig& cfg);

}  // namespace efie
