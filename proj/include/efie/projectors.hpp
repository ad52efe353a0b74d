#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "efie/basis.hpp"

namespace efie {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Choice of the injective map L defining the Star matrix.
enum class SigmaVariant { lagrange, node, orthonormal };

const char* to_string(SigmaVariant v);
SigmaVariant parse_sigma_variant(const std::string& name);

struct StarMatrix {
  SparseMatrix sigma;  // N_p x M_p
  SigmaVariant variant = SigmaVariant::lagrange;
  int order = 0;
  // Orthonormal basis (M_p x N_bodies) of the right null space, one column
  // per body with support on that body's charge dofs.
  Eigen::MatrixXd null_basis;
};

// Entries on the reference cell times the dof sign: lagrange integrates the
// Lagrange charge function against the reference divergence, node samples the
// reference divergence at the charge nodes, orthonormal takes the divergence
// expansion coefficients. Throws BasisError when the orders differ.
StarMatrix assemble_sigma(const BasisSpace& basis, const ChargeSpace& charge, SigmaVariant variant);

// "# rows cols nnz" header followed by zero-based "row col value" lines.
void write_sigma_triplets(const StarMatrix& star, std::ostream& out);
void write_sigma_triplets(const StarMatrix& star, const std::filesystem::path& path);

struct CgOptions {
  double tol = 1e-10;  // relative to |Sigma^T x|
  int max_iter = 0;    // 0 selects 10 * M_p
};

struct CgStats {
  int iterations = 0;
  double residual = 0.0;
};

// P^Sigma = Sigma (Sigma^T Sigma)^+ Sigma^T and P^LH = I - P^Sigma applied
// matrix-free. The normal equations are solved by conjugate gradients, batched
// over columns, with Jacobi column scaling and the per-body null space
// projected out of right-hand sides and residuals. Throws SolverError with the
// residual history when a column fails to converge.
class ProjectorPair {
 public:
  explicit ProjectorPair(StarMatrix star, CgOptions options = {});

  int size() const { return static_cast<int>(star_.sigma.rows()); }
  const StarMatrix& star() const { return star_; }
  const CgOptions& options() const { return options_; }

  Eigen::MatrixXd apply_Psigma(const Eigen::MatrixXd& x, CgStats* stats = nullptr) const;
  Eigen::MatrixXd apply_PLH(const Eigen::MatrixXd& x, CgStats* stats = nullptr) const;
  CMatrix apply_Psigma(const CMatrix& x, CgStats* stats = nullptr) const;
  CMatrix apply_PLH(const CMatrix& x, CgStats* stats = nullptr) const;

  // Dense P^Sigma assembled from the pseudo-inverse of the scaled normal
  // matrix, itself obtained by CG on the identity.
  Eigen::MatrixXd dense_Psigma(CgStats* stats = nullptr) const;

  // Solves (S Sigma^T Sigma S) Z = rhs for each column, S the Jacobi scaling.
  Eigen::MatrixXd solve_normal(const Eigen::MatrixXd& rhs, CgStats* stats = nullptr) const;

 private:
  StarMatrix star_;
  CgOptions options_;
  SparseMatrix scaled_;  // Sigma S
  SparseMatrix normal_;  // S Sigma^T Sigma S
  Eigen::MatrixXd null_;  // scaled null basis, orthonormal
};

ProjectorPair make_projectors(const BasisSpace& basis, SigmaVariant variant, CgOptions options = {});

// Literal SVD evaluation of P^Sigma; intended for N_p <= 2000.
Eigen::MatrixXd dense_Psigma_svd(const StarMatrix& star);

// Maximum over `trials` random unit vectors of |P^Sigma_A x - P^Sigma_B x|.
double verify_invariance(const ProjectorPair& a, const ProjectorPair& b, int trials, std::uint64_t seed = 7);

}  // namespace efie
