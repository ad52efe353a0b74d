#include <cmath>
#include <numbers>
#include <stdexcept>

#include "efie/errors.hpp"
#include "efie/triangle_rules.hpp"

namespace efie {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw QuadratureError("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from Chebyshev initial guesses, on [-1, 1].
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

namespace {

void add_orbit3(TriangleRule& r, double a, double w) {
  // (a, a, 1 - 2a) and permutations.
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({a, a});
  r.points.push_back({a, b});
  r.points.push_back({b, a});
  for (int i = 0; i < 3; ++i) r.weights.push_back(0.5 * w);
}

void add_orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  const double xs[6][2] = {{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}};
  for (const auto& x : xs) {
    r.points.push_back({x[0], x[1]});
    r.weights.push_back(0.5 * w);
  }
}

TriangleRule collapsed_rule(int degree) {
  // Duffy collapse (s, t) -> (s (1 - t), s t) with Jacobian s; the s factor
  // raises the degree in s by one.
  const int n = (degree + 3) / 2;
  const GaussRule g = gauss_legendre(n);
  TriangleRule r;
  r.degree = degree;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double s = g.points[i], t = g.points[j];
      r.points.push_back({s * (1.0 - t), s * t});
      r.weights.push_back(g.weights[i] * g.weights[j] * s);
    }
  }
  return r;
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  if (degree < 0) throw QuadratureError("triangle_rule: negative degree");
  TriangleRule r;
  switch (degree) {
    case 0:
    case 1:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5);
      r.degree = 1;
      return r;
    case 2:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      r.degree = 2;
      return r;
    case 3:
      // Strang-Fix 4-point rule (negative centroid weight).
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5 * (-27.0 / 48.0));
      add_orbit3(r, 0.2, 25.0 / 48.0);
      r.degree = 3;
      return r;
    case 4:
      add_orbit3(r, 0.445948490915965, 0.223381589678011);
      add_orbit3(r, 0.091576213509771, 0.109951743655322);
      r.degree = 4;
      return r;
    case 5: {
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(0.5 * 0.225);
      const double s15 = std::sqrt(15.0);
      add_orbit3(r, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
      add_orbit3(r, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
      r.degree = 5;
      return r;
    }
    case 6:
      add_orbit3(r, 0.249286745170910, 0.116786275726379);
      add_orbit3(r, 0.063089014491502, 0.050844906370207);
      add_orbit6(r, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      r.degree = 6;
      return r;
    default:
      return collapsed_rule(degree);
  }
}

}  // namespace efie
