#pragma once

#include <vector>

#include <Eigen/Dense>

#include "efie/basis.hpp"

namespace efie::detail {

// Reference functions sampled at a point set: u and v components and the
// reference divergence, each (points x local functions).
struct ReferenceTable {
  Eigen::MatrixXd fu, fv, div;
};

ReferenceTable sample_reference(const std::vector<ReferenceFunction>& fns, const std::vector<Vec2>& pts);

// Piola numerators on one cell: field[d](q, i) is component d of (dr/dxi) phi_i
// at point q, so psi dS = field dxi and div psi dS = div dxi. Orientation signs
// are not applied.
struct CellTable {
  Eigen::MatrixXd pos;  // points x 3
  Eigen::MatrixXd field[3];
  const Eigen::MatrixXd* div = nullptr;  // shared reference divergence
};

CellTable make_cell_table(const SurfaceMesh& mesh, int cell, const std::vector<Vec2>& pts,
                          const ReferenceTable& ref);

}  // namespace efie::detail
