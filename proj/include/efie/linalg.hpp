#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace efie {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Singular values in descending order (LAPACK gesdd, no vectors).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);
Eigen::VectorXd singular_values(const CMatrix& a);

struct RealSvd {
  Eigen::MatrixXd u;  // rows x rows when full, rows x min(rows, cols) otherwise
  Eigen::VectorXd s;
  Eigen::MatrixXd vt;
};
RealSvd svd(const Eigen::MatrixXd& a, bool full_u);

// Number of singular values above rel_tol * s_max.
int numerical_rank(const Eigen::VectorXd& s, double rel_tol = 1e-10);

// Orthogonal projector onto range(a): U_r U_r^T from the SVD.
Eigen::MatrixXd range_projector(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

// Dense LU solve (LAPACK gesv). Throws SolverError when the matrix is singular.
CVector lu_solve(const CMatrix& a, const CVector& b);
CMatrix lu_inverse(const CMatrix& a);

using LinearOperator = std::function<CVector(const CVector&)>;

struct GmresResult {
  CVector x;
  int iterations = 0;
  double residual = 0.0;  // relative to |b|
  bool converged = false;
  std::vector<double> history;
};

// Restarted GMRES(restart) from a zero initial guess. Stops at relative
// residual <= tol or after max_iter total iterations; does not throw.
GmresResult gmres(const LinearOperator& a, const CVector& b, int restart = 50, double tol = 1e-8,
                  int max_iter = 5000);
GmresResult gmres(const CMatrix& a, const CVector& b, int restart = 50, double tol = 1e-8, int max_iter = 5000);

struct PowerResult {
  double norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Spectral norm of A by power iteration on A^H A, started from a seeded random
// vector; stops when successive estimates differ by <= tol (relative).
PowerResult power_norm(const LinearOperator& a, const LinearOperator& a_adjoint, Eigen::Index n,
                       double tol = 1e-8, int max_iter = 10000, std::uint64_t seed = 1);
PowerResult power_norm(const CMatrix& a, double tol = 1e-8, int max_iter = 10000, std::uint64_t seed = 1);

}  // namespace efie
