#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <Eigen/Geometry>

#include "efie/errors.hpp"
#include "efie/mesh.hpp"
#include "efie/triangle_rules.hpp"

namespace efie {

ReferenceMap::ReferenceMap(const std::array<Vec3, 6>& nodes, int geometric_order)
    : nodes_(nodes), order_(geometric_order) {}

Vec3 ReferenceMap::point(const Vec2& x) const {
  const double l0 = 1.0 - x[0] - x[1], l1 = x[0], l2 = x[1];
  if (order_ == 1) return l0 * nodes_[0] + l1 * nodes_[1] + l2 * nodes_[2];
  return l0 * (2.0 * l0 - 1.0) * nodes_[0] + l1 * (2.0 * l1 - 1.0) * nodes_[1] +
         l2 * (2.0 * l2 - 1.0) * nodes_[2] + 4.0 * l0 * l1 * nodes_[3] + 4.0 * l1 * l2 * nodes_[4] +
         4.0 * l2 * l0 * nodes_[5];
}

Mat32 ReferenceMap::jacobian(const Vec2& x) const {
  Mat32 jac;
  if (order_ == 1) {
    jac.col(0) = nodes_[1] - nodes_[0];
    jac.col(1) = nodes_[2] - nodes_[0];
    return jac;
  }
  const double l0 = 1.0 - x[0] - x[1], l1 = x[0], l2 = x[1];
  // d/du: dl0 = -1, dl1 = 1, dl2 = 0; d/dv: dl0 = -1, dl1 = 0, dl2 = 1.
  jac.col(0) = -(4.0 * l0 - 1.0) * nodes_[0] + (4.0 * l1 - 1.0) * nodes_[1] +
               4.0 * (l0 - l1) * nodes_[3] + 4.0 * l2 * nodes_[4] - 4.0 * l2 * nodes_[5];
  jac.col(1) = -(4.0 * l0 - 1.0) * nodes_[0] + (4.0 * l2 - 1.0) * nodes_[2] -
               4.0 * l1 * nodes_[3] + 4.0 * l1 * nodes_[4] + 4.0 * (l0 - l2) * nodes_[5];
  return jac;
}

double ReferenceMap::area_element(const Vec2& x) const {
  const Mat32 j = jacobian(x);
  return j.col(0).cross(j.col(1)).norm();
}

Vec3 ReferenceMap::normal(const Vec2& x) const {
  const Mat32 j = jacobian(x);
  return j.col(0).cross(j.col(1)).normalized();
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> nodes, std::vector<Triangle> cells, int geometric_order)
    : nodes_(std::move(nodes)), cells_(std::move(cells)), order_(geometric_order) {
  if (order_ != 1 && order_ != 2) throw MeshError("geometric order must be 1 or 2");
  const int n = static_cast<int>(nodes_.size());
  const int used = order_ == 1 ? 3 : 6;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int i = 0; i < used; ++i) {
      if (cells_[c].nodes[i] < 0 || cells_[c].nodes[i] >= n)
        throw MeshError("cell " + std::to_string(c) + " references a missing node");
    }
    const auto& t = cells_[c].nodes;
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError("cell " + std::to_string(c) + " has repeated corners");
  }
}

int SurfaceMesh::num_corner_vertices() const {
  std::set<int> corners;
  for (const auto& t : cells_) corners.insert(t.nodes.begin(), t.nodes.begin() + 3);
  return static_cast<int>(corners.size());
}

const std::vector<InternalEdge>& SurfaceMesh::internal_edges() const {
  if (!connected_) throw MeshError("connectivity not built");
  return edges_;
}

int SurfaceMesh::cell_edge(int cell, int local) const {
  if (!connected_) throw MeshError("connectivity not built");
  return cell_edges_[cell][local];
}

int SurfaceMesh::body_of_cell(int cell) const {
  if (!connected_) throw MeshError("connectivity not built");
  return body_[cell];
}

int SurfaceMesh::num_bodies() const {
  if (!connected_) throw MeshError("connectivity not built");
  return num_bodies_;
}

ReferenceMap SurfaceMesh::reference_map(int cell) const {
  std::array<Vec3, 6> x;
  const auto& t = cells_[cell];
  const int used = order_ == 1 ? 3 : 6;
  for (int i = 0; i < used; ++i) x[i] = nodes_[t.nodes[i]];
  for (int i = used; i < 6; ++i) x[i] = Vec3::Zero();
  return ReferenceMap(x, order_);
}

Vec3 SurfaceMesh::centroid(int cell) const {
  return reference_map(cell).point(Vec2(1.0 / 3.0, 1.0 / 3.0));
}

double SurfaceMesh::diameter(int cell) const {
  const auto& t = cells_[cell];
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    d = std::max(d, (nodes_[t.nodes[i]] - nodes_[t.nodes[(i + 1) % 3]]).norm());
  return d;
}

SurfaceMesh build_connectivity(SurfaceMesh mesh) {
  struct Incidence {
    int cell;
    int local;
    bool forward;  // local edge runs from the lower to the higher vertex id
  };
  std::map<std::pair<int, int>, std::vector<Incidence>> by_edge;
  const int nc = mesh.num_cells();
  for (int c = 0; c < nc; ++c) {
    const auto& t = mesh.cells_[c];
    for (int i = 0; i < 3; ++i) {
      const int from = t.nodes[(i + 1) % 3], to = t.nodes[(i + 2) % 3];
      by_edge[{std::min(from, to), std::max(from, to)}].push_back({c, i, from < to});
    }
  }

  mesh.edges_.clear();
  mesh.cell_edges_.assign(nc, {-1, -1, -1});
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  for (const auto& [key, inc] : by_edge) {
    if (inc.size() != 2) {
      throw MeshError("edge (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                      ") is shared by " + std::to_string(inc.size()) +
                      " cells; only closed manifold surfaces are supported");
    }
    if (inc[0].forward == inc[1].forward) {
      throw MeshError("cells " + std::to_string(inc[0].cell) + " and " +
                      std::to_string(inc[1].cell) + " are inconsistently oriented");
    }
    const Incidence& plus = inc[0].cell < inc[1].cell ? inc[0] : inc[1];
    const Incidence& minus = inc[0].cell < inc[1].cell ? inc[1] : inc[0];
    if (plus.cell == minus.cell) throw MeshError("cell touches itself along an edge");
    if (mesh.order_ == 2) {
      const int m0 = mesh.cells_[plus.cell].mid_node(plus.local);
      const int m1 = mesh.cells_[minus.cell].mid_node(minus.local);
      if (m0 != m1) throw MeshError("cells sharing an edge disagree on its mid-edge node");
    }
    const int id = static_cast<int>(mesh.edges_.size());
    mesh.edges_.push_back(
        {key.first, key.second, plus.cell, minus.cell, plus.local, minus.local});
    mesh.cell_edges_[plus.cell][plus.local] = id;
    mesh.cell_edges_[minus.cell][minus.local] = id;
    parent[find(plus.cell)] = find(minus.cell);
  }

  mesh.body_.assign(nc, -1);
  std::map<int, int> label;
  for (int c = 0; c < nc; ++c) {
    const int root = find(c);
    auto it = label.find(root);
    if (it == label.end()) it = label.emplace(root, static_cast<int>(label.size())).first;
    mesh.body_[c] = it->second;
  }
  mesh.num_bodies_ = static_cast<int>(label.size());
  mesh.connected_ = true;
  return mesh;
}

double total_area(const SurfaceMesh& mesh) {
  const TriangleRule rule = triangle_rule(6);
  double area = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const ReferenceMap map = mesh.reference_map(c);
    for (int q = 0; q < rule.size(); ++q) area += rule.weights[q] * map.area_element(rule.points[q]);
  }
  return area;
}

double signed_volume(const SurfaceMesh& mesh) {
  // Divergence theorem with F = r / 3: V = (1/3) int r . n dS.
  const TriangleRule rule = triangle_rule(6);
  double vol = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const ReferenceMap map = mesh.reference_map(c);
    for (int q = 0; q < rule.size(); ++q) {
      const Mat32 j = map.jacobian(rule.points[q]);
      vol += rule.weights[q] * map.point(rule.points[q]).dot(j.col(0).cross(j.col(1))) / 3.0;
    }
  }
  return vol;
}

double average_diameter(const SurfaceMesh& mesh) {
  double sum = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) sum += mesh.diameter(c);
  return mesh.num_cells() > 0 ? sum / mesh.num_cells() : 0.0;
}

int euler_characteristic(const SurfaceMesh& mesh) {
  return mesh.num_corner_vertices() - mesh.num_internal_edges() + mesh.num_cells();
}

}  // namespace efie
