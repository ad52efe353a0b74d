#include <cmath>
#include <random>

#include "efie/errors.hpp"
#include "efie/linalg.hpp"

namespace efie {

PowerResult power_norm(const LinearOperator& a, const LinearOperator& a_adjoint, Eigen::Index n, double tol,
                       int max_iter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = {normal(rng), normal(rng)};
  x.normalize();
  PowerResult res;
  double previous = 0.0;
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    CVector y = a_adjoint(a(x));
    const double lambda = y.norm();
    if (lambda == 0.0) {
      res.norm = 0.0;
      res.converged = true;
      return res;
    }
    res.norm = std::sqrt(lambda);
    x = y / lambda;
    if (std::abs(res.norm - previous) <= tol * res.norm) {
      res.converged = true;
      return res;
    }
    previous = res.norm;
  }
  res.iterations = max_iter;
  return res;
}

PowerResult power_norm(const CMatrix& a, double tol, int max_iter, std::uint64_t seed) {
  return power_norm([&a](const CVector& x) -> CVector { return a * x; },
                    [&a](const CVector& x) -> CVector { return a.adjoint() * x; }, a.cols(), tol, max_iter, seed);
}

}  // namespace efie
