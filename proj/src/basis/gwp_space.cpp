#include <string>

#include "efie/basis.hpp"
#include "efie/errors.hpp"

namespace efie {
namespace {

void check_order(int p) {
  if (p < 0 || p > kMaxBasisOrder)
    throw BasisError("basis order " + std::to_string(p) + " outside supported range 0.." +
                     std::to_string(kMaxBasisOrder));
}

// Zeroth-order reference field x - V_beta: unit flux through edge beta.
std::array<Poly2, 2> omega(int beta) {
  static const double corner[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  return {Poly2::affine(-corner[beta][0], 1.0, 0.0), Poly2::affine(-corner[beta][1], 0.0, 1.0)};
}

// N^beta_{ijk} Omega_beta / (1 - xi_beta(point)), where the interpolation point
// has lattice index t on the (p+2)-lattice and N^beta uses the unshifted
// Silvester factor in xi_beta and shifted factors in the other two.
ReferenceFunction make_function(int p, int beta, const std::array<int, 3>& t,
                                const std::vector<Poly2>& ortho) {
  const int n = p + 2;
  Poly2 shape = silvester(n, t[beta], barycentric(beta));
  for (int g = 0; g < 3; ++g) {
    if (g != beta) shape = shape * shifted_silvester(n, t[g], barycentric(g));
  }
  shape *= double(n) / double(n - t[beta]);
  const auto om = omega(beta);
  ReferenceFunction f;
  f.beta = beta;
  f.field = {shape * om[0], shape * om[1]};
  f.divergence = f.field[0].du() + f.field[1].dv();
  f.divergence_coeffs.resize(static_cast<Eigen::Index>(ortho.size()));
  for (std::size_t k = 0; k < ortho.size(); ++k) f.divergence_coeffs[k] = (ortho[k] * f.divergence).integral();
  return f;
}

}  // namespace

std::vector<ReferenceFunction> gwp_reference_functions(int p) {
  check_order(p);
  const int n = p + 2;
  const auto ortho = orthonormal_polynomials(p);
  std::vector<ReferenceFunction> fns;
  for (int e = 0; e < 3; ++e) {
    for (int q = 0; q <= p; ++q) {
      std::array<int, 3> t{};
      t[e] = 0;
      t[(e + 1) % 3] = p + 1 - q;
      t[(e + 2) % 3] = q + 1;
      ReferenceFunction f = make_function(p, e, t, ortho);
      f.edge = e;
      f.edge_point = q;
      fns.push_back(std::move(f));
    }
  }
  // Interior lattice points carry three functions with sum_beta xi_beta Omega_beta = 0
  // as the only relation; the beta = 2 member is dropped.
  for (int i = 1; i <= n - 2; ++i) {
    for (int j = 1; i + j <= n - 1; ++j) {
      const std::array<int, 3> t{i, j, n - i - j};
      for (int beta = 0; beta < 2; ++beta) fns.push_back(make_function(p, beta, t, ortho));
    }
  }
  return fns;
}

BasisSpace build_gwp(std::shared_ptr<const SurfaceMesh> mesh, int p) {
  check_order(p);
  if (!mesh || !mesh->has_connectivity()) throw BasisError("build_gwp requires a mesh with connectivity");
  BasisSpace space;
  space.mesh_ = mesh;
  space.order_ = p;
  space.reference_ = gwp_reference_functions(p);
  const int ne = mesh->num_internal_edges(), nc = mesh->num_cells();
  const int per_edge = p + 1, per_cell = p * (p + 1);
  space.size_ = per_edge * ne + per_cell * nc;

  const int nloc = space.local_size();
  space.dofs_.resize(static_cast<std::size_t>(nc) * nloc);
  for (int c = 0; c < nc; ++c) {
    const auto& tri = mesh->cell(c);
    int interior = 0;
    for (int i = 0; i < nloc; ++i) {
      const ReferenceFunction& f = space.reference_[i];
      LocalDof& d = space.dofs_[static_cast<std::size_t>(c) * nloc + i];
      if (f.edge >= 0) {
        const int id = mesh->cell_edge(c, f.edge);
        const InternalEdge& edge = mesh->internal_edges()[id];
        const bool forward = tri.corner((f.edge + 1) % 3) < tri.corner((f.edge + 2) % 3);
        const int q = forward ? f.edge_point : p - f.edge_point;
        d.dof = id * per_edge + q;
        d.sign = edge.cell_plus == c ? 1.0 : -1.0;
      } else {
        d.dof = per_edge * ne + c * per_cell + interior++;
        d.sign = 1.0;
      }
    }
  }
  return space;
}

DofDescriptor BasisSpace::descriptor(int dof) const {
  const int per_edge = order_ + 1;
  const int edge_dofs = per_edge * mesh_->num_internal_edges();
  if (dof < edge_dofs) return {DofDescriptor::Kind::edge, dof / per_edge, dof % per_edge};
  const int per_cell = order_ * (order_ + 1);
  return {DofDescriptor::Kind::cell, (dof - edge_dofs) / per_cell, (dof - edge_dofs) % per_cell};
}

std::vector<BasisValue> evaluate_basis(const BasisSpace& space, int cell, const Vec2& xi) {
  constexpr double tol = 1e-12;
  if (xi[0] < -tol || xi[1] < -tol || xi[0] + xi[1] > 1.0 + tol)
    throw BasisError("reference point outside the reference triangle");
  const ReferenceMap map = space.mesh().reference_map(cell);
  const Mat32 jac = map.jacobian(xi);
  const double j = jac.col(0).cross(jac.col(1)).norm();
  const auto dofs = space.cell_dofs(cell);
  std::vector<BasisValue> out;
  out.reserve(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const ReferenceFunction& f = space.reference_functions()[i];
    const Vec2 ref(f.field[0](xi), f.field[1](xi));
    out.push_back({dofs[i].dof, dofs[i].sign * (jac * ref) / j, dofs[i].sign * f.divergence(xi) / j});
  }
  return out;
}

}  // namespace efie
