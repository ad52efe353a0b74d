#pragma once

#include <Eigen/Dense>

#include "efie/operators.hpp"
#include "efie/projectors.hpp"

namespace efie {

struct ScalingOptions {
  double tol = 1e-6;  // power-iteration relative tolerance
  int max_iter = 5000;
  std::uint64_t seed = 3;
};

// C = sqrt(|T_h|_2 / |P^LH T_s P^LH|_2), both norms by power iteration. The
// dense overload uses a precomputed P^Sigma; the other applies the projector
// matrix-free. Throws SolverError when the denominator vanishes.
double estimate_C(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, const ScalingOptions& opts = {});
double estimate_C(const EfieBlocks& blocks, const ProjectorPair& pp, const ScalingOptions& opts = {});

struct StabilizedSystem {
  CMatrix matrix;
  double C = 1.0;
  double k = 0.0;
};

// jC PLH Ts PLH + (j/C) Th - k PLH Ts PS - k PS Ts PLH - (jk^2/C) PS Ts PS.
// The product PLH Th is never formed.
StabilizedSystem assemble_stabilized(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, double C);
StabilizedSystem assemble_stabilized(const EfieBlocks& blocks, const ProjectorPair& pp, double C);

// P T P with P = j sqrt(k/C) PS + sqrt(C/k) PLH and T formed explicitly.
// Reference path for consistency checks only.
CMatrix naive_preconditioned(const EfieBlocks& blocks, const Eigen::MatrixXd& p_sigma, double C);

// j sqrt(k/C) PS e + sqrt(C/k) PLH e_sub.
CVector build_rhs(const Eigen::MatrixXd& p_sigma, const Excitation& exc, double C, double k);
CVector build_rhs(const ProjectorPair& pp, const Excitation& exc, double C, double k);

enum class SolveMethod { lu, gmres };

struct SolveOptions {
  SolveMethod method = SolveMethod::lu;
  int restart = 50;
  double tol = 1e-8;
  int max_iter = 5000;
};

struct StabilizedSolution {
  CVector y;
  CVector j_sol;   // sqrt(C/k) PLH y
  CVector j_nsol;  // j sqrt(k/C) PS y
  double residual = 0.0;  // |A y - b| / |b|
  int iterations = 0;     // GMRES iterations, 0 for LU
};

// Throws SolverError when LU fails or GMRES does not converge.
StabilizedSolution solve_stabilized(const StabilizedSystem& system, const CVector& rhs,
                                    const Eigen::MatrixXd& p_sigma, const SolveOptions& opts = {});

// Direct solution of T j = e.
CVector solve_plain(const EfieBlocks& blocks, const CVector& e);

}  // namespace efie
