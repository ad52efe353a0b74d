#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace efie {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat32 = Eigen::Matrix<double, 3, 2>;

// Triangle in Gmsh node ordering: corners 0..2, then the mid-edge nodes of
// (0,1), (1,2), (2,0). Mid-edge entries are -1 for flat cells.
struct Triangle {
  std::array<int, 6> nodes{-1, -1, -1, -1, -1, -1};

  int corner(int i) const { return nodes[i]; }
  // Mid-edge node of local edge i (the edge opposite corner i).
  int mid_node(int i) const { return nodes[3 + (i + 1) % 3]; }
};

// Edge shared by two cells. vertex_a < vertex_b; the reference direction runs
// from vertex_a to vertex_b. cell_plus < cell_minus. Local edge i of a cell is
// the edge opposite its corner i.
struct InternalEdge {
  int vertex_a = -1;
  int vertex_b = -1;
  int cell_plus = -1;
  int cell_minus = -1;
  int local_plus = -1;
  int local_minus = -1;
};

// Map from the reference triangle {u, v >= 0, u + v <= 1} (corners (0,0),
// (1,0), (0,1)) to a flat or quadratic physical cell.
class ReferenceMap {
 public:
  ReferenceMap(const std::array<Vec3, 6>& nodes, int geometric_order);

  Vec3 point(const Vec2& x) const;
  // Columns are dr/du and dr/dv.
  Mat32 jacobian(const Vec2& x) const;
  // Surface Jacobian |dr/du x dr/dv|; twice the area for flat cells.
  double area_element(const Vec2& x) const;
  Vec3 normal(const Vec2& x) const;
  int geometric_order() const { return order_; }
  const Vec3& node(int i) const { return nodes_[i]; }

 private:
  std::array<Vec3, 6> nodes_;
  int order_;
};

class SurfaceMesh {
 public:
  SurfaceMesh() = default;
  SurfaceMesh(std::vector<Vec3> nodes, std::vector<Triangle> cells, int geometric_order);

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<Triangle>& cells() const { return cells_; }
  const Triangle& cell(int c) const { return cells_[c]; }
  int geometric_order() const { return order_; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  // Distinct corner vertices (mid-edge nodes excluded).
  int num_corner_vertices() const;

  bool has_connectivity() const { return connected_; }
  const std::vector<InternalEdge>& internal_edges() const;
  int num_internal_edges() const { return static_cast<int>(internal_edges().size()); }
  // Internal edge id of local edge i of a cell.
  int cell_edge(int cell, int local) const;
  int body_of_cell(int cell) const;
  int num_bodies() const;

  ReferenceMap reference_map(int cell) const;
  Vec3 centroid(int cell) const;
  // Largest corner-to-corner distance.
  double diameter(int cell) const;

 private:
  friend SurfaceMesh build_connectivity(SurfaceMesh mesh);

  std::vector<Vec3> nodes_;
  std::vector<Triangle> cells_;
  int order_ = 1;

  bool connected_ = false;
  std::vector<InternalEdge> edges_;
  std::vector<std::array<int, 3>> cell_edges_;
  std::vector<int> body_;
  int num_bodies_ = 0;
};

// Builds internal edges, orientations and connected components. Throws
// MeshError on open, non-manifold or inconsistently oriented surfaces.
SurfaceMesh build_connectivity(SurfaceMesh mesh);

// ASCII Gmsh MSH 2.2 / 4.1 with 3-node (type 2) or 6-node (type 9) triangles.
// Connectivity is not built.
SurfaceMesh parse_gmsh(const std::filesystem::path& path);
SurfaceMesh parse_gmsh(std::istream& in);

void write_gmsh22(const SurfaceMesh& mesh, std::ostream& out);
void write_gmsh22(const SurfaceMesh& mesh, const std::filesystem::path& path);

// Icosahedron refined `subdivisions` times, nodes projected to the sphere.
SurfaceMesh generate_sphere(double radius, int subdivisions, int geometric_order = 1);
// Genus-1 torus around the z axis with 2 * n_major * n_minor cells.
SurfaceMesh generate_torus(double major_radius, double minor_radius, int n_major, int n_minor,
                           int geometric_order = 1);

double total_area(const SurfaceMesh& mesh);
// Volume enclosed by the surface, positive for outward normals.
double signed_volume(const SurfaceMesh& mesh);
double average_diameter(const SurfaceMesh& mesh);
// V - E + F over corner vertices; requires connectivity.
int euler_characteristic(const SurfaceMesh& mesh);

}  // namespace efie
