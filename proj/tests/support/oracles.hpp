#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace efie::test {

using P3 = Eigen::Vector3d;

// Gauss-Legendre nodes and weights on [0, 1] by Newton iteration on P_n.
inline void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp) * 2.0 * 0.5;
  }
}

// Potential of a flat triangle with unit density: integral over the triangle
// of 1/|r - r'| dS', closed form by edge contributions.
inline double triangle_potential(const P3& r, const std::array<P3, 3>& v) {
  P3 n = (v[1] - v[0]).cross(v[2] - v[0]);
  n.normalize();
  const double d = (r - v[0]).dot(n), ad = std::abs(d);
  const P3 rho = r - d * n;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const P3& a = v[i];
    const P3& b = v[(i + 1) % 3];
    const P3 l = (b - a).normalized();
    const P3 u = l.cross(n);
    const double p0 = (a - rho).dot(u);
    const double lm = (a - rho).dot(l), lp = (b - rho).dot(l);
    const double rm = (r - a).norm(), rp = (r - b).norm();
    const double r0s = p0 * p0 + d * d;
    if (std::abs(p0) > 1e-300) {
      // Both limits behind the foot point: use the conjugate form.
      const double log_term = (lp + lm >= 0.0) ? std::log((rp + lp) / (rm + lm)) : std::log((rm - lm) / (rp - lp));
      sum += p0 * log_term;
    }
    if (ad > 0.0) sum -= ad * (std::atan(p0 * lp / (r0s + ad * rp)) - std::atan(p0 * lm / (r0s + ad * rm)));
  }
  return sum;
}

// Adaptive integral of f over a flat triangle (surface measure): each
// triangle is split into four until the refined estimate changes by less
// than `tol` times its share of the area.
class AdaptiveTriangle {
 public:
  explicit AdaptiveTriangle(int n = 6) {
    std::vector<double> x, w;
    legendre_rule(n, x, w);
    // Collapsed tensor rule on the unit right triangle.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u = x[i], v = x[j] * (1.0 - x[i]);
        pts_.push_back({u, v});
        wts_.push_back(w[i] * w[j] * (1.0 - x[i]));
      }
  }

  double integrate(const std::function<double(const P3&)>& f, const std::array<P3, 3>& t, double tol,
                   int max_depth = 14) const {
    const double area = 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
    return recurse(f, t, rule(f, t), tol / area, 0, max_depth);
  }

 private:
  double rule(const std::function<double(const P3&)>& f, const std::array<P3, 3>& t) const {
    const double jac = (t[1] - t[0]).cross(t[2] - t[0]).norm();
    double s = 0.0;
    for (std::size_t q = 0; q < pts_.size(); ++q)
      s += wts_[q] * f(t[0] + pts_[q][0] * (t[1] - t[0]) + pts_[q][1] * (t[2] - t[0]));
    return s * jac;
  }

  double recurse(const std::function<double(const P3&)>& f, const std::array<P3, 3>& t, double whole,
                 double tol_density, int depth, int max_depth) const {
    const P3 m01 = 0.5 * (t[0] + t[1]), m12 = 0.5 * (t[1] + t[2]), m20 = 0.5 * (t[2] + t[0]);
    const std::array<std::array<P3, 3>, 4> kids = {
        {{t[0], m01, m20}, {m01, t[1], m12}, {m20, m12, t[2]}, {m12, m20, m01}}};
    std::array<double, 4> part;
    double refined = 0.0;
    for (int i = 0; i < 4; ++i) refined += part[i] = rule(f, kids[i]);
    const double area = 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
    if (std::abs(refined - whole) < tol_density * area || depth >= max_depth) return refined;
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += recurse(f, kids[i], part[i], tol_density, depth + 1, max_depth);
    return sum;
  }

  std::vector<std::array<double, 2>> pts_;
  std::vector<double> wts_;
};

}  // namespace efie::test
