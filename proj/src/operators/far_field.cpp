#include <cmath>
#include <numbers>

#include "cell_tables.hpp"
#include "efie/errors.hpp"
#include "efie/operators.hpp"

namespace efie {

std::vector<Eigen::Vector3cd> far_field(const BasisSpace& space, const CVector& j_sol, const CVector& j_nsol,
                                        double k, const std::vector<Vec3>& directions, int degree) {
  if (j_sol.size() != space.size() || j_nsol.size() != space.size())
    throw Error("far_field: current vectors do not match the basis size");
  const SurfaceMesh& mesh = space.mesh();
  const TriangleRule rule = triangle_rule(degree);
  const detail::ReferenceTable ref = detail::sample_reference(space.reference_functions(), rule.points);

  std::vector<Eigen::Vector3cd> radiation(directions.size(), Eigen::Vector3cd::Zero());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const detail::CellTable t = detail::make_cell_table(mesh, c, rule.points, ref);
    const auto dofs = space.cell_dofs(c);
    Eigen::VectorXcd ns(dofs.size()), so(dofs.size());
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      ns[i] = dofs[i].sign * j_nsol[dofs[i].dof];
      so[i] = dofs[i].sign * j_sol[dofs[i].dof];
    }
    // Current densities (times dS / dxi) at the rule points.
    Eigen::MatrixXcd jn(rule.size(), 3), js(rule.size(), 3);
    for (int d = 0; d < 3; ++d) {
      jn.col(d) = t.field[d].cast<cdouble>() * ns;
      js.col(d) = t.field[d].cast<cdouble>() * so;
    }
    for (std::size_t o = 0; o < directions.size(); ++o) {
      const Vec3& rh = directions[o];
      for (int q = 0; q < rule.size(); ++q) {
        const double x = k * rh.dot(t.pos.row(q).transpose());
        const double s = std::sin(0.5 * x);
        const cdouble full = std::polar(1.0, x);
        const cdouble sub(-2.0 * s * s, std::sin(x));
        radiation[o] += rule.weights[q] * (full * jn.row(q).transpose() + sub * js.row(q).transpose());
      }
    }
  }
  // Coefficients solve T j = e with e = -(1/eta) <E^i, psi>, i.e. they carry
  // minus the physical current.
  const cdouble pre(0.0, k * kEta0 / (4.0 * std::numbers::pi));
  std::vector<Eigen::Vector3cd> field(directions.size());
  for (std::size_t o = 0; o < directions.size(); ++o) {
    const Eigen::Vector3cd rh = directions[o].cast<cdouble>();
    field[o] = pre * (radiation[o] - rh * rh.dot(radiation[o]));
  }
  return field;
}

std::vector<double> rcs(const std::vector<Eigen::Vector3cd>& field, double amplitude) {
  std::vector<double> out;
  out.reserve(field.size());
  for (const auto& f : field) out.push_back(4.0 * std::numbers::pi * f.squaredNorm() / (amplitude * amplitude));
  return out;
}

double to_dbsm(double sigma) { return 10.0 * std::log10(sigma); }

std::vector<Vec3> phi0_cut(const std::vector<double>& theta_deg) {
  std::vector<Vec3> dirs;
  dirs.reserve(theta_deg.size());
  for (double t : theta_deg) {
    const double r = t * std::numbers::pi / 180.0;
    dirs.emplace_back(std::sin(r), 0.0, std::cos(r));
  }
  return dirs;
}

}  // namespace efie
