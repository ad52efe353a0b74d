#include <cmath>

#include "efie/errors.hpp"
#include "efie/linalg.hpp"
#include "efie/precond.hpp"

namespace efie {

namespace {

// Complex times real with separate real GEMMs.
CMatrix times_real(const CMatrix& a, const Eigen::MatrixXd& b) {
  CMatrix out(a.rows(), b.cols());
  out.real() = a.real() * b;
  out.imag() = a.imag() * b;
  return out;
}

CMatrix real_times(const Eigen::MatrixXd& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  out.real() = a * b.real();
  out.imag() = a * b.imag();
  return out;
}

double ratio_to_C(double th_norm, double ts_norm) {
  if (!(ts_norm > 0.0) || !std::isfinite(ts_norm))
    throw SolverError("scaling constant undefined: |PLH Ts PLH| vanishes");
  return std::sqrt(th_norm / ts_norm);
}

}  // namespace

double estimate_C(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, const ScalingOptions& opts) {
  const PowerResult th = power_norm(blocks.Th, opts.tol, opts.max_iter, opts.seed);
  const Eigen::MatrixXd plh = Eigen::MatrixXd::Identity(p_sigma.rows(), p_sigma.cols()) - p_sigma;
  const CMatrix m = real_times(plh, times_real(blocks.Ts, plh));
  const PowerResult ts = power_norm(m, opts.tol, opts.max_iter, opts.seed + 1);
  return ratio_to_C(th.norm, ts.norm);
}

double estimate_C(const EfieBlocks& blocks, const ProjectorPair& pp, const ScalingOptions& opts) {
  const PowerResult th = power_norm(blocks.Th, opts.tol, opts.max_iter, opts.seed);
  const CMatrix& ts = blocks.Ts;
  auto op = [&](const CVector& x) -> CVector {
    return pp.apply_PLH(CMatrix(ts * pp.apply_PLH(CMatrix(x)).col(0))).col(0);
  };
  auto adj = [&](const CVector& x) -> CVector {
    return pp.apply_PLH(CMatrix(ts.adjoint() * pp.apply_PLH(CMatrix(x)).col(0))).col(0);
  };
  const PowerResult r = power_norm(op, adj, ts.cols(), opts.tol, opts.max_iter, opts.seed + 1);
  return ratio_to_C(th.norm, r.norm);
}

StabilizedSystem assemble_stabilized(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, double C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw SolverError("scaling constant must be positive and finite");
  if (!(blocks.k > 0.0)) throw SolverError("stabilized system requires k > 0");
  const double k = blocks.k;
  const Eigen::MatrixXd plh = Eigen::MatrixXd::Identity(p_sigma.rows(), p_sigma.cols()) - p_sigma;
  const CMatrix ts_l = times_real(blocks.Ts, plh);  // Ts PLH
  const CMatrix ts_s = blocks.Ts - ts_l;             // Ts PS
  const CMatrix l_ts_l = real_times(plh, ts_l);
  const CMatrix s_ts_l = ts_l - l_ts_l;
  const CMatrix l_ts_s = real_times(plh, ts_s);
  const CMatrix s_ts_s = ts_s - l_ts_s;
  const cdouble j(0.0, 1.0);
  StabilizedSystem sys;
  sys.C = C;
  sys.k = k;
  sys.matrix = (j * C) * l_ts_l + (j / C) * blocks.Th - k * l_ts_s - k * s_ts_l - (j * k * k / C) * s_ts_s;
  return sys;
}

StabilizedSystem assemble_stabilized(const EfieBlocks& blocks, const ProjectorPair& pp, double C) {
  return assemble_stabilized(blocks, pp.dense_Psigma(), C);
}

CMatrix naive_preconditioned(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, double C) {
  const double k = blocks.k;
  const cdouble j(0.0, 1.0);
  const Eigen::MatrixXd plh = Eigen::MatrixXd::Identity(p_sigma.rows(), p_sigma.cols()) - p_sigma;
  const CMatrix p = (j * std::sqrt(k / C)) * p_sigma.cast<cdouble>() + std::sqrt(C / k) * plh.cast<cdouble>();
  return p * efie_matrix(blocks) * p;
}

CVector build_rhs(const Eigen::MatrixXd& p_sigma, const Excitation& exc, double C, double k) {
  const cdouble j(0.0, 1.0);
  const CVector ps_e = real_times(p_sigma, exc.e);
  const CVector plh_esub = exc.e_sub - real_times(p_sigma, exc.e_sub);
  return (j * std::sqrt(k / C)) * ps_e + std::sqrt(C / k) * plh_esub;
}

CVector build_rhs(const ProjectorPair& pp, const Excitation& exc, double C, double k) {
  const cdouble j(0.0, 1.0);
  const CVector ps_e = pp.apply_Psigma(CMatrix(exc.e)).col(0);
  const CVector plh_esub = pp.apply_PLH(CMatrix(exc.e_sub)).col(0);
  return (j * std::sqrt(k / C)) * ps_e + std::sqrt(C / k) * plh_esub;
}

StabilizedSolution solve_stabilized(const StabilizedSystem& system, const CVector& rhs,
                                    const Eigen::MatrixXd& p_sigma, const SolveOptions& opts) {
  StabilizedSolution sol;
  if (opts.method == SolveMethod::lu) {
    sol.y = lu_solve(system.matrix, rhs);
  } else {
    GmresResult g = gmres(system.matrix, rhs, opts.restart, opts.tol, opts.max_iter);
    if (!g.converged)
      throw SolverError("GMRES did not converge in " + std::to_string(g.iterations) + " iterations", g.history);
    sol.y = std::move(g.x);
    sol.iterations = g.iterations;
  }
  const double bnorm = rhs.norm();
  sol.residual = bnorm > 0.0 ? (system.matrix * sol.y - rhs).norm() / bnorm : 0.0;
  const cdouble j(0.0, 1.0);
  const CVector ps_y = real_times(p_sigma, sol.y);
  sol.j_sol = std::sqrt(system.C / system.k) * (sol.y - ps_y);
  sol.j_nsol = (j * std::sqrt(system.k / system.C)) * ps_y;
  return sol;
}

CVector solve_plain(const EfieBlocks& blocks, const CVector& e) { return lu_solve(efie_matrix(blocks), e); }

}  // namespace efie
