#include <cmath>

#include "efie/linalg.hpp"

namespace efie {

GmresResult gmres(const LinearOperator& a, const CVector& b, int restart, double tol, int max_iter) {
  using cd = std::complex<double>;
  const Eigen::Index n = b.size();
  GmresResult res;
  res.x = CVector::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  const int m = std::max(1, restart);
  CMatrix v(n, m + 1);
  CMatrix h = CMatrix::Zero(m + 1, m);
  CVector cs(m), sn(m), g(m + 1);

  while (res.iterations < max_iter) {
    const CVector r = b - a(res.x);
    double beta = r.norm();
    if (beta / bnorm <= tol) {
      res.residual = beta / bnorm;
      res.converged = true;
      return res;
    }
    v.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    h.setZero();
    int j = 0;
    for (; j < m && res.iterations < max_iter; ++j) {
      CVector w = a(v.col(j));
      // Modified Gram-Schmidt with one reorthogonalization pass.
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const cd c = v.col(i).dot(w);
          h(i, j) += c;
          w -= c * v.col(i);
        }
      h(j + 1, j) = w.norm();
      if (std::abs(h(j + 1, j)) > 0.0) v.col(j + 1) = w / h(j + 1, j);
      for (int i = 0; i < j; ++i) {
        const cd t = std::conj(cs[i]) * h(i, j) + std::conj(sn[i]) * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double den = std::hypot(std::abs(h(j, j)), std::abs(h(j + 1, j)));
      cs[j] = den == 0.0 ? cd(1.0) : h(j, j) / den;
      sn[j] = den == 0.0 ? cd(0.0) : h(j + 1, j) / den;
      h(j, j) = den;
      h(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = std::conj(cs[j]) * g[j];
      ++res.iterations;
      res.residual = std::abs(g[j + 1]) / bnorm;
      res.history.push_back(res.residual);
      if (res.residual <= tol) {
        ++j;
        break;
      }
    }
    const CVector y = h.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    res.x += v.leftCols(j) * y;
    if (res.residual <= tol) {
      res.residual = (b - a(res.x)).norm() / bnorm;
      if (res.residual <= tol) {
        res.converged = true;
        return res;
      }
    }
  }
  res.residual = (b - a(res.x)).norm() / bnorm;
  res.converged = res.residual <= tol;
  return res;
}

GmresResult gmres(const CMatrix& a, const CVector& b, int restart, double tol, int max_iter) {
  return gmres([&a](const CVector& x) -> CVector { return a * x; }, b, restart, tol, max_iter);
}

}  // namespace efie
