#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "efie/mesh.hpp"
#include "efie/polynomial.hpp"

namespace efie {

inline constexpr int kMaxBasisOrder = 3;

// Reference vector function on the reference triangle together with its
// divergence. Physical values follow the contravariant Piola map:
// psi = (dr/dxi) field / J and div psi = divergence / J.
struct ReferenceFunction {
  std::array<Poly2, 2> field;
  Poly2 divergence;
  // Divergence expanded in orthonormal_polynomials(order).
  Eigen::VectorXd divergence_coeffs;
  // Edge functions: local edge and interpolation point index along the local
  // edge direction (corner (e+1)%3 towards (e+2)%3). Interior: edge = -1.
  int edge = -1;
  int edge_point = -1;
  // Barycentric index of the factor Omega_beta used to build the function.
  int beta = -1;
};

// Global dof attached to a local function of a cell, with its orientation sign.
struct LocalDof {
  int dof;
  double sign;
};

struct DofDescriptor {
  enum class Kind { edge, cell } kind;
  int entity;  // internal edge id or cell id
  int local;   // 0..p for edges, 0..p(p+1)-1 for cells
};

// Order-p Graglia-Wilton-Peterson div-conforming space. p = 0 is RWG scaled so
// that the flux through the defining edge is 1.
class BasisSpace {
 public:
  int order() const { return order_; }
  int size() const { return size_; }
  int local_size() const { return static_cast<int>(reference_.size()); }
  const SurfaceMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const SurfaceMesh>& mesh_ptr() const { return mesh_; }

  const std::vector<ReferenceFunction>& reference_functions() const { return reference_; }
  std::span<const LocalDof> cell_dofs(int cell) const {
    return {dofs_.data() + static_cast<std::size_t>(cell) * local_size(),
            static_cast<std::size_t>(local_size())};
  }
  DofDescriptor descriptor(int dof) const;

 private:
  friend BasisSpace build_gwp(std::shared_ptr<const SurfaceMesh> mesh, int p);

  std::shared_ptr<const SurfaceMesh> mesh_;
  int order_ = 0;
  int size_ = 0;
  std::vector<ReferenceFunction> reference_;
  std::vector<LocalDof> dofs_;
};

constexpr long gwp_dimension(long internal_edges, long cells, int p) {
  return (p + 1) * internal_edges + long(p) * (p + 1) * cells;
}
constexpr long charge_dimension(long cells, int p) { return long(p + 1) * (p + 2) / 2 * cells; }

// gwp_dimension(E_int, C, p) functions. Requires connectivity; 0 <= p <= 3.
BasisSpace build_gwp(std::shared_ptr<const SurfaceMesh> mesh, int p);

// Reference functions of the order-p space on one cell, in local ordering:
// 3 (p+1) edge functions followed by p (p+1) interior functions.
std::vector<ReferenceFunction> gwp_reference_functions(int p);

struct BasisValue {
  int dof;
  Vec3 value;
  double divergence;
};

// Physical values of every dof supported on `cell` at reference point xi.
std::vector<BasisValue> evaluate_basis(const BasisSpace& space, int cell, const Vec2& xi);

// Order-p Lagrange charge space: (p+1)(p+2)/2 equispaced nodes per cell
// (the centroid for p = 0), each function supported on a single cell.
class ChargeSpace {
 public:
  int order() const { return order_; }
  int size() const { return local_size() * mesh_->num_cells(); }
  int local_size() const { return static_cast<int>(lagrange_.size()); }
  int dof(int cell, int local) const { return cell * local_size() + local; }
  int cell_of(int dof) const { return dof / local_size(); }
  const SurfaceMesh& mesh() const { return *mesh_; }

  const std::vector<Vec2>& reference_nodes() const { return nodes_; }
  const std::vector<Poly2>& lagrange() const { return lagrange_; }
  Vec3 node_position(int dof) const;
  // Value of charge function `dof` at reference point xi of its own cell.
  double evaluate(int dof, const Vec2& xi) const;

 private:
  friend ChargeSpace build_charge_space(std::shared_ptr<const SurfaceMesh> mesh, int p);

  std::shared_ptr<const SurfaceMesh> mesh_;
  int order_ = 0;
  std::vector<Vec2> nodes_;
  std::vector<Poly2> lagrange_;
};

ChargeSpace build_charge_space(std::shared_ptr<const SurfaceMesh> mesh, int p);

}  // namespace efie
