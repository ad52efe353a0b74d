#include <string>

#include "efie/basis.hpp"
#include "efie/errors.hpp"

namespace efie {

ChargeSpace build_charge_space(std::shared_ptr<const SurfaceMesh> mesh, int p) {
  if (p < 0 || p > kMaxBasisOrder)
    throw BasisError("charge space order " + std::to_string(p) + " outside supported range");
  if (!mesh) throw BasisError("build_charge_space requires a mesh");
  ChargeSpace space;
  space.mesh_ = std::move(mesh);
  space.order_ = p;
  if (p == 0) {
    space.nodes_.push_back({1.0 / 3.0, 1.0 / 3.0});
    space.lagrange_.push_back(Poly2::constant(1.0));
    return space;
  }
  // Equispaced lattice (i, j, k) / p with Silvester products as the
  // interpolating Lagrange functions.
  for (int j = 0; j <= p; ++j) {
    for (int k = 0; j + k <= p; ++k) {
      const int i = p - j - k;
      space.nodes_.push_back({double(j) / p, double(k) / p});
      space.lagrange_.push_back(silvester(p, i, barycentric(0)) * silvester(p, j, barycentric(1)) *
                                silvester(p, k, barycentric(2)));
    }
  }
  return space;
}

Vec3 ChargeSpace::node_position(int dof) const {
  return mesh_->reference_map(cell_of(dof)).point(nodes_[dof % local_size()]);
}

double ChargeSpace::evaluate(int dof, const Vec2& xi) const { return lagrange_[dof % local_size()](xi); }

}  // namespace efie
