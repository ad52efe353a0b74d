#include <algorithm>
#include <string>
#include <vector>

#include <lapacke.h>

#include "efie/errors.hpp"
#include "efie/linalg.hpp"

namespace efie {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  const lapack_int info =
      LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw SolverError("dgesdd failed with info " + std::to_string(info));
  return s;
}

Eigen::VectorXd singular_values(const CMatrix& a) {
  CMatrix work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  Eigen::VectorXd s(std::min(m, n));
  if (s.size() == 0) return s;
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n,
                                         reinterpret_cast<lapack_complex_double*>(work.data()), m, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0) throw SolverError("zgesdd failed with info " + std::to_string(info));
  return s;
}

RealSvd svd(const Eigen::MatrixXd& a, bool full_u) {
  Eigen::MatrixXd work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows()), n = static_cast<lapack_int>(a.cols());
  const lapack_int r = std::min(m, n);
  RealSvd out;
  out.s.resize(r);
  out.u.resize(m, full_u ? m : r);
  out.vt.resize(full_u ? n : r, n);
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, full_u ? 'A' : 'S', m, n, work.data(), m,
                                         out.s.data(), out.u.data(), m, out.vt.data(),
                                         static_cast<lapack_int>(out.vt.rows()));
  if (info != 0) throw SolverError("dgesdd failed with info " + std::to_string(info));
  return out;
}

int numerical_rank(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double cut = rel_tol * s.maxCoeff();
  return static_cast<int>((s.array() > cut).count());
}

Eigen::MatrixXd range_projector(const Eigen::MatrixXd& a, double rel_tol) {
  const RealSvd d = svd(a, false);
  const int r = numerical_rank(d.s, rel_tol);
  const Eigen::MatrixXd ur = d.u.leftCols(r);
  return ur * ur.transpose();
}

CVector lu_solve(const CMatrix& a, const CVector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) throw SolverError("lu_solve: dimension mismatch");
  CMatrix work = a;
  CVector x = b;
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_zgesv(LAPACK_COL_MAJOR, n, 1, reinterpret_cast<lapack_complex_double*>(work.data()), n, ipiv.data(),
                    reinterpret_cast<lapack_complex_double*>(x.data()), n);
  if (info != 0) throw SolverError("zgesv: singular matrix (info " + std::to_string(info) + ")");
  return x;
}

CMatrix lu_inverse(const CMatrix& a) {
  if (a.rows() != a.cols()) throw SolverError("lu_inverse: matrix is not square");
  CMatrix work = a;
  CMatrix x = CMatrix::Identity(a.rows(), a.cols());
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_zgesv(LAPACK_COL_MAJOR, n, n, reinterpret_cast<lapack_complex_double*>(work.data()), n, ipiv.data(),
                    reinterpret_cast<lapack_complex_double*>(x.data()), n);
  if (info != 0) throw SolverError("zgesv: singular matrix (info " + std::to_string(info) + ")");
  return x;
}

}  // namespace efie
