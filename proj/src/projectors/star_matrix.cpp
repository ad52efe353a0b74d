#include <fstream>
#include <iomanip>
#include <ostream>

#include "efie/errors.hpp"
#include "efie/projectors.hpp"

namespace efie {

const char* to_string(SigmaVariant v) {
  switch (v) {
    case SigmaVariant::lagrange:
      return "lagrange";
    case SigmaVariant::node:
      return "node";
    case SigmaVariant::orthonormal:
      return "orthonormal";
  }
  return "unknown";
}

SigmaVariant parse_sigma_variant(const std::string& name) {
  if (name == "lagrange") return SigmaVariant::lagrange;
  if (name == "node") return SigmaVariant::node;
  if (name == "orthonormal") return SigmaVariant::orthonormal;
  throw Error("unknown Star matrix variant '" + name + "'");
}

namespace {

// Functional m of the variant applied to a reference polynomial.
double apply_functional(const ChargeSpace& charge, const std::vector<Poly2>& ortho, SigmaVariant v, int m,
                        const Poly2& d) {
  switch (v) {
    case SigmaVariant::lagrange:
      return (charge.lagrange()[m] * d).integral();
    case SigmaVariant::node:
      return d(charge.reference_nodes()[m]);
    case SigmaVariant::orthonormal:
      return (ortho[m] * d).integral();
  }
  return 0.0;
}

}  // namespace

StarMatrix assemble_sigma(const BasisSpace& basis, const ChargeSpace& charge, SigmaVariant variant) {
  if (basis.order() != charge.order())
    throw BasisError("Star matrix requires basis and charge spaces of the same order (" +
                     std::to_string(basis.order()) + " vs " + std::to_string(charge.order()) + ")");
  if (&basis.mesh() != &charge.mesh()) throw BasisError("Star matrix requires spaces on the same mesh");
  const SurfaceMesh& mesh = basis.mesh();
  const int p = basis.order();
  const int nq = charge.local_size();
  const auto ortho = orthonormal_polynomials(p);
  const auto& fns = basis.reference_functions();

  // Reference-cell block: local[i][m] = L_m(div phi_i).
  Eigen::MatrixXd local(basis.local_size(), nq);
  for (int i = 0; i < basis.local_size(); ++i)
    for (int m = 0; m < nq; ++m) local(i, m) = apply_functional(charge, ortho, variant, m, fns[i].divergence);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_cells()) * basis.local_size() * nq);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto dofs = basis.cell_dofs(c);
    for (int i = 0; i < basis.local_size(); ++i)
      for (int m = 0; m < nq; ++m) {
        const double v = dofs[i].sign * local(i, m);
        if (v != 0.0) triplets.emplace_back(dofs[i].dof, charge.dof(c, m), v);
      }
  }
  StarMatrix star;
  star.variant = variant;
  star.order = p;
  star.sigma.resize(basis.size(), charge.size());
  star.sigma.setFromTriplets(triplets.begin(), triplets.end());
  star.sigma.makeCompressed();

  // Per-cell weights w with sum_m w_m L_m(q) = integral of q for every
  // polynomial q of degree <= p; a body's weighted indicator is then
  // annihilated because the total flux of each basis function vanishes.
  Eigen::MatrixXd lmat(nq, nq);
  Eigen::VectorXd moments(nq);
  for (int k = 0; k < nq; ++k) {
    moments[k] = ortho[k].integral();
    for (int m = 0; m < nq; ++m) lmat(m, k) = apply_functional(charge, ortho, variant, m, ortho[k]);
  }
  const Eigen::VectorXd w = lmat.transpose().fullPivLu().solve(moments);

  star.null_basis = Eigen::MatrixXd::Zero(charge.size(), mesh.num_bodies());
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int m = 0; m < nq; ++m) star.null_basis(charge.dof(c, m), mesh.body_of_cell(c)) = w[m];
  for (int b = 0; b < mesh.num_bodies(); ++b) star.null_basis.col(b).normalize();
  return star;
}

void write_sigma_triplets(const StarMatrix& star, std::ostream& out) {
  out << "# " << star.sigma.rows() << ' ' << star.sigma.cols() << ' ' << star.sigma.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < star.sigma.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(star.sigma, r); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void write_sigma_triplets(const StarMatrix& star, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_sigma_triplets(star, out);
}

}  // namespace efie
