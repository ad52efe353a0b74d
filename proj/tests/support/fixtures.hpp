#pragma once

#include <memory>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "efie/mesh.hpp"

namespace efie::test {

// Closed tetrahedron shell with outward faces. `offset` shifts every node.
inline SurfaceMesh tetrahedron_raw(const Vec3& offset = Vec3::Zero(), double scale = 1.0) {
  std::vector<Vec3> nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (auto& n : nodes) n = scale * n + offset;
  const int faces[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  std::vector<Triangle> cells(4);
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < 3; ++i) cells[c].nodes[i] = faces[c][i];
  return SurfaceMesh(std::move(nodes), std::move(cells), 1);
}

inline std::shared_ptr<const SurfaceMesh> tetrahedron(double scale = 1.0) {
  return std::make_shared<const SurfaceMesh>(build_connectivity(tetrahedron_raw(Vec3::Zero(), scale)));
}

// Two tetrahedron shells. `gap` > 0 separates them; gap = 0 joins them at a
// single vertex (node 0 of the second is node 3 of the first).
inline std::shared_ptr<const SurfaceMesh> two_tetrahedra(double gap) {
  const SurfaceMesh a = tetrahedron_raw();
  std::vector<Vec3> nodes = a.nodes();
  std::vector<Triangle> cells = a.cells();
  const Vec3 shift(0.0, 0.0, 1.0 + gap);
  const Vec3 second[4] = {{0, 0, 0}, {1, 0.3, 0.2}, {0.2, 1, 0.1}, {0.1, 0.2, 1}};
  int ids[4];
  for (int i = 0; i < 4; ++i) {
    if (i == 0 && gap == 0.0) {
      ids[0] = 3;
      continue;
    }
    nodes.push_back(second[i] + shift);
    ids[i] = static_cast<int>(nodes.size()) - 1;
  }
  const int faces[4][3] = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
  for (const auto& f : faces) {
    Triangle t;
    for (int i = 0; i < 3; ++i) t.nodes[i] = ids[f[i]];
    cells.push_back(t);
  }
  return std::make_shared<const SurfaceMesh>(build_connectivity(SurfaceMesh(std::move(nodes), std::move(cells), 1)));
}

inline std::shared_ptr<const SurfaceMesh> sphere(int subdivisions, int geometric_order = 2, double radius = 1.0) {
  return std::make_shared<const SurfaceMesh>(generate_sphere(radius, subdivisions, geometric_order));
}

inline std::shared_ptr<const SurfaceMesh> torus(int n_major, int n_minor, int geometric_order = 2) {
  return std::make_shared<const SurfaceMesh>(generate_torus(2.0, 0.5, n_major, n_minor, geometric_order));
}

struct NamedMesh {
  const char* name;
  std::shared_ptr<const SurfaceMesh> mesh;
};

// Tetrahedron, icosphere(1) and torus(8,4).
inline std::vector<NamedMesh> suite_meshes() {
  return {{"tetrahedron", tetrahedron()}, {"icosphere(1)", sphere(1)}, {"torus(8,4)", torus(8, 4)}};
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

inline double rel_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace efie::test
