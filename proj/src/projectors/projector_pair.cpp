#include <algorithm>
#include <cmath>
#include <random>

#include "efie/errors.hpp"
#include "efie/linalg.hpp"
#include "efie/projectors.hpp"

namespace efie {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr Eigen::Index kColumnChunk = 128;

void deflate(const Eigen::MatrixXd& null, RowMatrix& x) { x.noalias() -= null * (null.transpose() * x); }

}  // namespace

ProjectorPair::ProjectorPair(StarMatrix star, CgOptions options) : star_(std::move(star)), options_(options) {
  const Eigen::Index m = star_.sigma.cols();
  if (options_.max_iter <= 0) options_.max_iter = static_cast<int>(10 * m);
  // Column norms give the Jacobi scaling of the normal matrix.
  Eigen::VectorXd colsq = Eigen::VectorXd::Zero(m);
  for (Eigen::Index r = 0; r < star_.sigma.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(star_.sigma, r); it; ++it) colsq[it.col()] += it.value() * it.value();
  Eigen::VectorXd scale(m);
  for (Eigen::Index j = 0; j < m; ++j) scale[j] = colsq[j] > 0.0 ? 1.0 / std::sqrt(colsq[j]) : 1.0;
  scaled_ = star_.sigma * scale.asDiagonal();
  scaled_.makeCompressed();
  normal_ = SparseMatrix(scaled_.transpose() * scaled_);
  normal_.prune(0.0);
  normal_.makeCompressed();
  // Null vectors of Sigma S are S^{-1} times those of Sigma; supports are
  // disjoint per body, so normalizing keeps them orthonormal.
  null_ = scale.cwiseInverse().asDiagonal() * star_.null_basis;
  for (Eigen::Index b = 0; b < null_.cols(); ++b) null_.col(b).normalize();
}

Eigen::MatrixXd ProjectorPair::solve_normal(const Eigen::MatrixXd& rhs, CgStats* stats) const {
  const Eigen::Index m = normal_.rows(), ncols = rhs.cols();
  Eigen::MatrixXd out(m, ncols);
  CgStats total;
  for (Eigen::Index c0 = 0; c0 < ncols; c0 += kColumnChunk) {
    const Eigen::Index k = std::min(kColumnChunk, ncols - c0);
    RowMatrix b = rhs.middleCols(c0, k);
    deflate(null_, b);
    const Eigen::VectorXd bnorm = b.colwise().norm().transpose();
    RowMatrix x = RowMatrix::Zero(m, k);
    RowMatrix r = b;
    RowMatrix p = r;
    RowMatrix ap(m, k);
    Eigen::VectorXd rr = r.colwise().squaredNorm().transpose();
    std::vector<bool> active(k);
    for (Eigen::Index j = 0; j < k; ++j) active[j] = bnorm[j] > 0.0;
    std::vector<double> history;
    int it = 0;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < k; ++j)
      if (active[j]) worst = 1.0;
    while (worst > options_.tol) {
      if (it >= options_.max_iter)
        throw SolverError("conjugate gradients on Sigma^T Sigma did not reach tolerance in " +
                              std::to_string(options_.max_iter) + " iterations",
                          history);
      ++it;
      ap.noalias() = normal_ * p;
      Eigen::VectorXd alpha = Eigen::VectorXd::Zero(k);
      for (Eigen::Index j = 0; j < k; ++j) {
        if (!active[j]) continue;
        const double pap = p.col(j).dot(ap.col(j));
        alpha[j] = pap > 0.0 ? rr[j] / pap : 0.0;
      }
      x.noalias() += p * alpha.asDiagonal();
      r.noalias() -= ap * alpha.asDiagonal();
      deflate(null_, r);
      worst = 0.0;
      Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
      for (Eigen::Index j = 0; j < k; ++j) {
        if (!active[j]) continue;
        const double rr_new = r.col(j).squaredNorm();
        const double rel = std::sqrt(rr_new) / bnorm[j];
        if (rel <= options_.tol || alpha[j] == 0.0) {
          active[j] = false;
          p.col(j).setZero();
          continue;
        }
        worst = std::max(worst, rel);
        beta[j] = rr_new / rr[j];
        rr[j] = rr_new;
      }
      history.push_back(worst);
      p = r + p * beta.asDiagonal();
      for (Eigen::Index j = 0; j < k; ++j)
        if (!active[j]) p.col(j).setZero();
    }
    deflate(null_, x);
    out.middleCols(c0, k) = x;
    total.iterations = std::max(total.iterations, it);
    total.residual = std::max(total.residual, history.empty() ? 0.0 : history.back());
  }
  if (stats) *stats = total;
  return out;
}

Eigen::MatrixXd ProjectorPair::apply_Psigma(const Eigen::MatrixXd& x, CgStats* stats) const {
  if (x.rows() != size()) throw SolverError("projector applied to a vector of the wrong length");
  const Eigen::MatrixXd rhs = scaled_.transpose() * x;
  return scaled_ * solve_normal(rhs, stats);
}

Eigen::MatrixXd ProjectorPair::apply_PLH(const Eigen::MatrixXd& x, CgStats* stats) const {
  return x - apply_Psigma(x, stats);
}

CMatrix ProjectorPair::apply_Psigma(const CMatrix& x, CgStats* stats) const {
  const Eigen::Index k = x.cols();
  Eigen::MatrixXd parts(x.rows(), 2 * k);
  parts.leftCols(k) = x.real();
  parts.rightCols(k) = x.imag();
  const Eigen::MatrixXd y = apply_Psigma(parts, stats);
  CMatrix out(x.rows(), k);
  out.real() = y.leftCols(k);
  out.imag() = y.rightCols(k);
  return out;
}

CMatrix ProjectorPair::apply_PLH(const CMatrix& x, CgStats* stats) const { return x - apply_Psigma(x, stats); }

Eigen::MatrixXd ProjectorPair::dense_Psigma(CgStats* stats) const {
  const Eigen::MatrixXd p = apply_Psigma(Eigen::MatrixXd(Eigen::MatrixXd::Identity(size(), size())), stats);
  return 0.5 * (p + p.transpose());
}

ProjectorPair make_projectors(const BasisSpace& basis, SigmaVariant variant, CgOptions options) {
  const ChargeSpace charge = build_charge_space(basis.mesh_ptr(), basis.order());
  return ProjectorPair(assemble_sigma(basis, charge, variant), options);
}

Eigen::MatrixXd dense_Psigma_svd(const StarMatrix& star) {
  return range_projector(Eigen::MatrixXd(star.sigma), 1e-10);
}

double verify_invariance(const ProjectorPair& a, const ProjectorPair& b, int trials, std::uint64_t seed) {
  if (a.size() != b.size()) throw Error("verify_invariance: projector sizes differ");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(a.size(), trials);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = normal(rng);
    x.col(j).normalize();
  }
  if (&a == &b) return 0.0;
  const Eigen::MatrixXd d = a.apply_Psigma(x) - b.apply_Psigma(x);
  return trials > 0 ? d.colwise().norm().maxCoeff() : 0.0;
}

}  // namespace efie
