#include <cmath>
#include <numbers>

#include "efie/errors.hpp"
#include "efie/quadrature.hpp"

namespace efie {

double static_green(double R) { return 1.0 / (4.0 * std::numbers::pi * R); }

cdouble helmholtz_green(double k, double R) {
  return std::polar(1.0, -k * R) / (4.0 * std::numbers::pi * R);
}

cdouble dynamic_green(double k, double R) {
  const double x = k * R;
  if (R == 0.0) return {0.0, -k / (4.0 * std::numbers::pi)};
  // e^{-jx} - 1 without cancellation.
  const double s = std::sin(0.5 * x);
  return cdouble(-2.0 * s * s, -std::sin(x)) / (4.0 * std::numbers::pi * R);
}

cdouble double_integral(const SurfaceMesh& mesh, int a, int b, const PairKernel& kernel,
                        const QuadratureConfig& cfg) {
  return double_integral(mesh, a, b, kernel, classify_pair(mesh, a, b, cfg.near_threshold), cfg);
}

cdouble double_integral(const SurfaceMesh& mesh, int a, int b, const PairKernel& kernel, PairClass cls,
                        const QuadratureConfig& cfg) {
  const bool swap = a > b;
  const int lo = swap ? b : a, hi = swap ? a : b;
  const PairRule rule = pair_rule(mesh, lo, hi, cls, cfg);
  const ReferenceMap ma = mesh.reference_map(lo);
  const ReferenceMap mb = mesh.reference_map(hi);
  cdouble sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const Vec3 r = ma.point(rule.x[q]);
    const Vec3 rp = mb.point(rule.y[q]);
    const cdouble kv = swap ? kernel(rp, r) : kernel(r, rp);
    if (!std::isfinite(kv.real()) || !std::isfinite(kv.imag()))
      throw QuadratureError(std::string("non-finite kernel value for ") + to_string(cls) + " pair");
    sum += rule.w[q] * ma.area_element(rule.x[q]) * mb.area_element(rule.y[q]) * kv;
  }
  return sum;
}

}  // namespace efie
