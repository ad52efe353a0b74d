#include <cmath>

#include "cell_tables.hpp"
#include "efie/errors.hpp"
#include "efie/operators.hpp"

namespace efie {

void PlaneWave::validate() const {
  constexpr double tol = 1e-12;
  if (std::abs(direction.norm() - 1.0) > tol || std::abs(polarization.norm() - 1.0) > tol)
    throw Error("plane wave direction and polarization must be unit vectors");
  if (std::abs(direction.dot(polarization)) > tol) throw Error("plane wave polarization must be orthogonal to direction");
  if (!(frequency >= 0.0)) throw Error("plane wave frequency must be non-negative");
}

namespace {

enum class Phase { full, subtracted, none };

CVector test_incident(const BasisSpace& space, const PlaneWave& wave, Phase phase, int degree) {
  wave.validate();
  const SurfaceMesh& mesh = space.mesh();
  const TriangleRule rule = triangle_rule(degree);
  const detail::ReferenceTable ref = detail::sample_reference(space.reference_functions(), rule.points);
  const double k = wave.k();
  const double scale = -wave.amplitude / kEta0;
  CVector e = CVector::Zero(space.size());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const detail::CellTable t = detail::make_cell_table(mesh, c, rule.points, ref);
    const Eigen::MatrixXd pf = wave.polarization[0] * t.field[0] + wave.polarization[1] * t.field[1] +
                               wave.polarization[2] * t.field[2];
    Eigen::VectorXcd factor(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
      const double x = k * wave.direction.dot(t.pos.row(q).transpose());
      cdouble f(1.0, 0.0);
      if (phase == Phase::full) {
        f = std::polar(1.0, -x);
      } else if (phase == Phase::subtracted) {
        const double s = std::sin(0.5 * x);
        f = cdouble(-2.0 * s * s, -std::sin(x));
      }
      factor[q] = scale * rule.weights[q] * f;
    }
    const Eigen::VectorXcd local = pf.transpose().cast<cdouble>() * factor;
    const auto dofs = space.cell_dofs(c);
    for (std::size_t i = 0; i < dofs.size(); ++i) e[dofs[i].dof] += dofs[i].sign * local[i];
  }
  return e;
}

}  // namespace

CVector assemble_excitation(const BasisSpace& space, const PlaneWave& wave, bool subtracted, int degree) {
  return test_incident(space, wave, subtracted ? Phase::subtracted : Phase::full, degree);
}

Excitation assemble_excitations(const BasisSpace& space, const PlaneWave& wave, int degree) {
  return {assemble_excitation(space, wave, false, degree), assemble_excitation(space, wave, true, degree)};
}

CVector static_test_vector(const BasisSpace& space, const PlaneWave& wave, int degree) {
  return test_incident(space, wave, Phase::none, degree);
}

}  // namespace efie
