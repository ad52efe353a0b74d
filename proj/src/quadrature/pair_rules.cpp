#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "efie/errors.hpp"
#include "efie/quadrature.hpp"

namespace efie {

const char* to_string(PairClass cls) {
  switch (cls) {
    case PairClass::identical:
      return "identical";
    case PairClass::shared_edge:
      return "shared_edge";
    case PairClass::shared_vertex:
      return "shared_vertex";
    case PairClass::near:
      return "near";
    case PairClass::far:
      return "far";
  }
  return "unknown";
}

QuadratureConfig default_quadrature(int basis_order) {
  QuadratureConfig cfg;
  cfg.far_degree = basis_order <= 1 ? 3 : 5;
  return cfg;
}

namespace {

int shared_corners(const Triangle& a, const Triangle& b) {
  int n = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) n += a.corner(i) == b.corner(j);
  return n;
}

int local_index(const Triangle& t, int vertex) {
  for (int i = 0; i < 3; ++i)
    if (t.corner(i) == vertex) return i;
  return -1;
}

// Simplex {0 <= x2 <= x1 <= 1} of the cube formulas, mapped to the reference
// triangle by (u, v) = (x1 - x2, x2) with unit Jacobian. Corners (0,0), (1,0),
// (1,1) go to reference corners 0, 1, 2.
Vec2 from_simplex(double x1, double x2) { return {x1 - x2, x2}; }

PairRule build_sauter_schwab(PairClass cls, int order) {
  const GaussRule g = gauss_legendre(order);
  PairRule rule;
  auto add = [&](double w, double x1, double x2, double y1, double y2) {
    rule.x.push_back(from_simplex(x1, x2));
    rule.y.push_back(from_simplex(y1, y2));
    rule.w.push_back(w);
  };
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        for (int d = 0; d < order; ++d) {
          const double xi = g.points[a], e1 = g.points[b], e2 = g.points[c], e3 = g.points[d];
          const double w0 = g.weights[a] * g.weights[b] * g.weights[c] * g.weights[d];
          switch (cls) {
            case PairClass::identical: {
              const double w = w0 * xi * xi * xi * e1 * e1 * e2;
              const double p1 = xi, p2 = xi * (1 - e1 + e1 * e2), q1 = xi * (1 - e1 * e2 * e3),
                           q2 = xi * (1 - e1);
              add(w, p1, p2, q1, q2);
              add(w, q1, q2, p1, p2);
              const double r1 = xi, r2 = xi * e1 * (1 - e2 + e2 * e3), s1 = xi * (1 - e1 * e2),
                           s2 = xi * e1 * (1 - e2);
              add(w, r1, r2, s1, s2);
              add(w, s1, s2, r1, r2);
              const double t1 = xi * (1 - e1 * e2 * e3), t2 = xi * e1 * (1 - e2 * e3), u1 = xi,
                           u2 = xi * e1 * (1 - e2);
              add(w, t1, t2, u1, u2);
              add(w, u1, u2, t1, t2);
              break;
            }
            case PairClass::shared_edge: {
              // Two regions and their mirror images under x <-> y.
              const double w1 = w0 * xi * xi * xi * e1 * e1;
              const double w2 = w1 * e2;
              const double a1 = xi, a2 = xi * e1 * e3, b1 = xi * (1 - e1 * e2), b2 = xi * e1 * (1 - e2);
              add(w1, a1, a2, b1, b2);
              add(w1, b1, b2, a1, a2);
              const double c1 = xi, c2 = xi * e1, d1 = xi * (1 - e1 * e2 * e3), d2 = xi * e1 * e2 * (1 - e3);
              add(w2, c1, c2, d1, d2);
              add(w2, d1, d2, c1, c2);
              break;
            }
            case PairClass::shared_vertex: {
              const double w = w0 * xi * xi * xi * e2;
              add(w, xi, xi * e1, xi * e2, xi * e2 * e3);
              add(w, xi * e2, xi * e2 * e3, xi, xi * e1);
              break;
            }
            default:
              throw QuadratureError(std::string("no Sauter-Schwab rule for class ") + to_string(cls));
          }
        }
  return rule;
}

}  // namespace

PairClass classify_pair(const SurfaceMesh& mesh, int a, int b, double near_threshold) {
  if (a == b) return PairClass::identical;
  switch (shared_corners(mesh.cell(a), mesh.cell(b))) {
    case 3:
      return PairClass::identical;
    case 2:
      return PairClass::shared_edge;
    case 1:
      return PairClass::shared_vertex;
    default:
      break;
  }
  const double dist = (mesh.centroid(a) - mesh.centroid(b)).norm();
  const double diam = std::max(mesh.diameter(a), mesh.diameter(b));
  return dist < near_threshold * diam ? PairClass::near : PairClass::far;
}

const PairRule& sauter_schwab_rule(PairClass cls, int order) {
  if (order < 1) throw QuadratureError("Sauter-Schwab order must be positive");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, PairRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(static_cast<int>(cls), order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_sauter_schwab(cls, order)).first;
  return it->second;
}

PairFrame pair_frame(const SurfaceMesh& mesh, int a, int b, PairClass cls) {
  PairFrame frame;
  const Triangle& ta = mesh.cell(a);
  const Triangle& tb = mesh.cell(b);
  if (cls == PairClass::identical) return frame;
  std::vector<int> common;
  for (int i = 0; i < 3; ++i)
    if (local_index(tb, ta.corner(i)) >= 0) common.push_back(ta.corner(i));
  const std::size_t expected = cls == PairClass::shared_edge ? 2 : cls == PairClass::shared_vertex ? 1 : 0;
  if (common.size() != expected) throw QuadratureError("cell pair does not match its class");
  auto fill = [&](const Triangle& t, std::array<int, 3>& perm) {
    int k = 0;
    for (int v : common) perm[k++] = local_index(t, v);
    // Remaining corners in cyclic order after the first shared one.
    for (int s = 1; s < 3 && k < 3; ++s) {
      const int c = (perm[0] + s) % 3;
      if (std::find(perm.begin(), perm.begin() + k, c) == perm.begin() + k) perm[k++] = c;
    }
  };
  if (!common.empty()) {
    fill(ta, frame.perm_a);
    fill(tb, frame.perm_b);
  }
  return frame;
}

Vec2 unpermute(const std::array<int, 3>& perm, const Vec2& p) {
  const double lam[3] = {1.0 - p[0] - p[1], p[0], p[1]};
  double orig[3];
  for (int i = 0; i < 3; ++i) orig[perm[i]] = lam[i];
  return {orig[1], orig[2]};
}

PairRule tensor_rule(const TriangleRule& ra, const TriangleRule& rb) {
  PairRule rule;
  const std::size_t n = static_cast<std::size_t>(ra.size()) * rb.size();
  rule.x.reserve(n);
  rule.y.reserve(n);
  rule.w.reserve(n);
  for (int i = 0; i < ra.size(); ++i)
    for (int j = 0; j < rb.size(); ++j) {
      rule.x.push_back(ra.points[i]);
      rule.y.push_back(rb.points[j]);
      rule.w.push_back(ra.weights[i] * rb.weights[j]);
    }
  return rule;
}

PairRule pair_rule(const SurfaceMesh& mesh, int a, int b, PairClass cls, const QuadratureConfig& cfg) {
  if (cls == PairClass::far || cls == PairClass::near) {
    const TriangleRule r = triangle_rule(cls == PairClass::far ? cfg.far_degree : cfg.far_degree + cfg.near_boost);
    return tensor_rule(r, r);
  }
  const PairRule& canonical = sauter_schwab_rule(cls, cfg.singular_order);
  const PairFrame frame = pair_frame(mesh, a, b, cls);
  PairRule rule;
  rule.w = canonical.w;
  rule.x.reserve(canonical.x.size());
  rule.y.reserve(canonical.y.size());
  for (int q = 0; q < canonical.size(); ++q) {
    rule.x.push_back(unpermute(frame.perm_a, canonical.x[q]));
    rule.y.push_back(unpermute(frame.perm_b, canonical.y[q]));
  }
  return rule;
}

}  // namespace efie
