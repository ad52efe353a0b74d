#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include <Eigen/Geometry>

#include "efie/errors.hpp"
#include "efie/mesh.hpp"

namespace efie {
namespace {

using Corners = std::array<int, 3>;

// Appends one mid-edge node per distinct edge, positioned by `midpoint`.
SurfaceMesh with_mid_nodes(std::vector<Vec3> nodes, const std::vector<Corners>& tris,
                           const std::function<Vec3(int, int)>& midpoint, int geometric_order) {
  std::vector<Triangle> cells(tris.size());
  std::map<std::pair<int, int>, int> mid;
  for (std::size_t c = 0; c < tris.size(); ++c) {
    for (int i = 0; i < 3; ++i) cells[c].nodes[i] = tris[c][i];
    if (geometric_order == 1) continue;
    // Gmsh order: mid(0,1), mid(1,2), mid(2,0).
    for (int e = 0; e < 3; ++e) {
      const int a = tris[c][e], b = tris[c][(e + 1) % 3];
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it == mid.end()) {
        nodes.push_back(midpoint(key.first, key.second));
        it = mid.emplace(key, static_cast<int>(nodes.size()) - 1).first;
      }
      cells[c].nodes[3 + e] = it->second;
    }
  }
  return build_connectivity(SurfaceMesh(std::move(nodes), std::move(cells), geometric_order));
}

}  // namespace

SurfaceMesh generate_sphere(double radius, int subdivisions, int geometric_order) {
  if (subdivisions < 0) throw MeshError("subdivisions must be non-negative");
  if (!(radius > 0.0)) throw MeshError("sphere radius must be positive");
  if (geometric_order != 1 && geometric_order != 2) throw MeshError("geometric order must be 1 or 2");

  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<Corners> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back((0.5 * (v[a] + v[b])).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      mid.emplace(key, id);
      return id;
    };
    std::vector<Corners> refined;
    refined.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]), c = midpoint(t[2], t[0]);
      refined.push_back({t[0], a, c});
      refined.push_back({t[1], b, a});
      refined.push_back({t[2], c, b});
      refined.push_back({a, b, c});
    }
    tris = std::move(refined);
  }
  for (auto& t : tris) {
    const Vec3 n = (v[t[1]] - v[t[0]]).cross(v[t[2]] - v[t[0]]);
    if (n.dot(v[t[0]] + v[t[1]] + v[t[2]]) < 0.0) std::swap(t[1], t[2]);
  }
  std::vector<Vec3> nodes;
  nodes.reserve(v.size());
  for (const auto& p : v) nodes.push_back(radius * p);
  auto mid = [&](int a, int b) -> Vec3 { return radius * (v[a] + v[b]).normalized(); };
  return with_mid_nodes(std::move(nodes), tris, mid, geometric_order);
}

SurfaceMesh generate_torus(double major_radius, double minor_radius, int n_major, int n_minor,
                           int geometric_order) {
  if (n_major < 3 || n_minor < 3) throw MeshError("torus needs n_major, n_minor >= 3");
  if (!(minor_radius > 0.0) || !(major_radius > minor_radius))
    throw MeshError("torus radii must satisfy 0 < minor_radius < major_radius");
  if (geometric_order != 1 && geometric_order != 2) throw MeshError("geometric order must be 1 or 2");

  const double two_pi = 2.0 * std::numbers::pi;
  auto position = [&](double theta, double phi) -> Vec3 {
    const double rho = major_radius + minor_radius * std::cos(phi);
    return {rho * std::cos(theta), rho * std::sin(theta), minor_radius * std::sin(phi)};
  };
  std::vector<Vec3> nodes;
  std::vector<Vec2> param;
  for (int i = 0; i < n_major; ++i) {
    for (int j = 0; j < n_minor; ++j) {
      const double theta = two_pi * i / n_major, phi = two_pi * j / n_minor;
      nodes.push_back(position(theta, phi));
      param.push_back({theta, phi});
    }
  }
  auto id = [&](int i, int j) { return (i % n_major) * n_minor + (j % n_minor); };
  std::vector<Corners> tris;
  for (int i = 0; i < n_major; ++i) {
    for (int j = 0; j < n_minor; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  }
  auto outward = [&](const Vec3& p) {
    const Vec3 axis_point = major_radius * Vec3(p.x(), p.y(), 0.0).normalized();
    return Vec3(p - axis_point);
  };
  for (auto& t : tris) {
    const Vec3 n = (nodes[t[1]] - nodes[t[0]]).cross(nodes[t[2]] - nodes[t[0]]);
    const Vec3 centre = (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) / 3.0;
    if (n.dot(outward(centre)) < 0.0) std::swap(t[1], t[2]);
  }
  auto mid = [&](int a, int b) -> Vec3 {
    // Parametric midpoint, taking the short way around each angle.
    auto half = [&](double x, double y) {
      double d = y - x;
      if (d > std::numbers::pi) d -= two_pi;
      if (d < -std::numbers::pi) d += two_pi;
      return x + 0.5 * d;
    };
    return position(half(param[a][0], param[b][0]), half(param[a][1], param[b][1]));
  };
  return with_mid_nodes(std::move(nodes), tris, mid, geometric_order);
}

}  // namespace efie
