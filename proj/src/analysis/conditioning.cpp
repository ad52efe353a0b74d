#include <string>

#include "efie/analysis.hpp"
#include "efie/errors.hpp"
#include "efie/linalg.hpp"

namespace efie {

namespace {

template <class M>
double cond_impl(const M& a, Eigen::Index limit) {
  if (a.rows() > limit || a.cols() > limit)
    throw Error("matrix of size " + std::to_string(a.rows()) + " exceeds the dense SVD limit " +
                std::to_string(limit));
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0) return 1.0;
  return s[0] / s[s.size() - 1];
}

}  // namespace

double condition_number(const CMatrix& a, Eigen::Index dense_limit) { return cond_impl(a, dense_limit); }

double condition_number(const Eigen::MatrixXd& a, Eigen::Index dense_limit) { return cond_impl(a, dense_limit); }

HelmholtzSplit helmholtz_split(const StarMatrix& star) {
  const RealSvd d = svd(Eigen::MatrixXd(star.sigma), true);
  HelmholtzSplit split;
  split.n_nsol = numerical_rank(d.s, 1e-10);
  split.q = d.u;
  return split;
}

double split_condition_number(const EfieBlocks& blocks, const HelmholtzSplit& split) {
  const double k = blocks.k;
  if (!(k > 0.0)) throw Error("split_condition_number requires k > 0");
  const Eigen::Index n = split.q.rows(), r = split.n_nsol, s = n - r;
  const Eigen::MatrixXd qn = split.q.leftCols(r);
  const Eigen::MatrixXd qs = split.q.rightCols(s);
  auto project = [](const Eigen::MatrixXd& l, const CMatrix& m, const Eigen::MatrixXd& rt) {
    CMatrix out(l.cols(), rt.cols());
    const Eigen::MatrixXd lt = l.transpose();
    out.real() = lt * (m.real() * rt);
    out.imag() = lt * (m.imag() * rt);
    return out;
  };
  const CMatrix a = project(qs, blocks.Ts, qs);
  const CMatrix b = project(qs, blocks.Ts, qn);
  const CMatrix d = project(qn, blocks.Ts, qn);
  const CMatrix h = project(qn, blocks.Th, qn);
  // In the split basis T = (j/k) [[k^2 A, k^2 B], [k^2 B^T, k^2 D - H]] =
  // (j/k) Bt Delta with Bt = [[A, k^2 B], [B^T, k^2 D - H]], Delta =
  // diag(k^2 I, I). Bt stays well conditioned as k -> 0.
  const double k2 = k * k;
  CMatrix bt(n, n);
  bt.topLeftCorner(s, s) = a;
  bt.topRightCorner(s, r) = k2 * b;
  bt.bottomLeftCorner(r, s) = b.transpose();
  bt.bottomRightCorner(r, r) = k2 * d - h;
  CMatrix scaled = bt;
  scaled.leftCols(s) *= k2;
  const double smax = singular_values(scaled)[0];
  CMatrix inv = lu_inverse(bt);
  inv.topRows(s) /= k2;
  const double inv_max = singular_values(inv)[0];
  return smax * inv_max;
}

}  // namespace efie
