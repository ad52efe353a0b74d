#include <doctest.h>

#include <sstream>

#include "../support/fixtures.hpp"
#include "efie/errors.hpp"
#include "efie/linalg.hpp"
#include "efie/projectors.hpp"

using namespace efie;

namespace {

std::shared_ptr<const BasisSpace> space_on(std::shared_ptr<const SurfaceMesh> mesh, int p) {
  return std::make_shared<const BasisSpace>(build_gwp(std::move(mesh), p));
}

StarMatrix star_on(const BasisSpace& s, SigmaVariant v) {
  return assemble_sigma(s, build_charge_space(s.mesh_ptr(), s.order()), v);
}

Eigen::MatrixXd dense(const StarMatrix& st) { return Eigen::MatrixXd(st.sigma); }

// Suite meshes plus two disjoint shells.
std::vector<test::NamedMesh> all_meshes() {
  auto m = test::suite_meshes();
  m.push_back({"two tetrahedra", test::two_tetrahedra(0.5)});
  return m;
}

}  // namespace

TEST_CASE("lowest-order star matrix is the signed incidence") {
  const auto mesh = test::tetrahedron();
  const auto s = space_on(mesh, 0);
  const Eigen::MatrixXd sigma = dense(star_on(*s, SigmaVariant::lagrange));
  REQUIRE(sigma.rows() == 6);
  REQUIRE(sigma.cols() == 4);
  for (int n = 0; n < 6; ++n) {
    const InternalEdge& e = mesh->internal_edges()[n];
    for (int c = 0; c < 4; ++c) {
      const double expected = c == e.cell_plus ? 1.0 : c == e.cell_minus ? -1.0 : 0.0;
      CHECK(sigma(n, c) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  CHECK((sigma * Eigen::VectorXd::Ones(4)).norm() < 1e-14);
}

TEST_CASE("rank and null space on every suite mesh") {
  for (const auto& [name, mesh] : all_meshes())
    for (int p = 0; p <= 2; ++p) {
      CAPTURE(name);
      CAPTURE(p);
      const auto s = space_on(mesh, p);
      for (SigmaVariant v : {SigmaVariant::lagrange, SigmaVariant::node, SigmaVariant::orthonormal}) {
        const StarMatrix st = star_on(*s, v);
        const int m = static_cast<int>(st.sigma.cols());
        CHECK(m == charge_dimension(mesh->num_cells(), p));
        CHECK(numerical_rank(singular_values(dense(st))) == m - mesh->num_bodies());
        CHECK(st.null_basis.cols() == mesh->num_bodies());
        CHECK((st.sigma * st.null_basis).norm() < 1e-12);
      }
      // Per-body constants lie in the null space of the Lagrange-tested matrix.
      const StarMatrix st = star_on(*s, SigmaVariant::lagrange);
      const ChargeSpace q = build_charge_space(mesh, p);
      for (int body = 0; body < mesh->num_bodies(); ++body) {
        Eigen::VectorXd ones = Eigen::VectorXd::Zero(q.size());
        for (int d = 0; d < q.size(); ++d)
          if (mesh->body_of_cell(q.cell_of(d)) == body) ones(d) = 1.0;
        CHECK((st.sigma * ones).norm() < 1e-12);
      }
    }
}

TEST_CASE("quadratic tetrahedron rank") {
  const StarMatrix st = star_on(*space_on(test::tetrahedron(), 1), SigmaVariant::lagrange);
  CHECK(numerical_rank(singular_values(dense(st))) == 11);
}

TEST_CASE("rows touch only the supporting cells") {
  const auto mesh = test::sphere(1);
  const auto s = space_on(mesh, 2);
  const ChargeSpace q = build_charge_space(mesh, 2);
  const StarMatrix st = star_on(*s, SigmaVariant::node);
  std::vector<std::vector<int>> cells_of(s->size());
  for (int c = 0; c < mesh->num_cells(); ++c)
    for (const LocalDof& d : s->cell_dofs(c)) cells_of[d.dof].push_back(c);
  for (int n = 0; n < st.sigma.outerSize(); ++n)
    for (SparseMatrix::InnerIterator it(st.sigma, n); it; ++it) {
      const int cell = q.cell_of(static_cast<int>(it.col()));
      CHECK(std::find(cells_of[n].begin(), cells_of[n].end(), cell) != cells_of[n].end());
    }
}

TEST_CASE("projector algebra against the SVD oracle") {
  for (const auto& [name, mesh] : test::suite_meshes())
    for (int p : {0, 1}) {
      CAPTURE(name);
      CAPTURE(p);
      const auto s = space_on(mesh, p);
      const ProjectorPair pp = make_projectors(*s, SigmaVariant::lagrange);
      const Eigen::MatrixXd x = test::random_matrix(s->size(), 3, 41);
      const Eigen::MatrixXd ps = pp.apply_Psigma(x), plh = pp.apply_PLH(x);
      const double tol = 1e-8 * x.norm();
      CHECK((pp.apply_Psigma(ps) - ps).norm() < tol);
      CHECK((ps + plh - x).norm() < 1e-14 * x.norm());
      CHECK(pp.apply_Psigma(plh).norm() < tol);
      CHECK(std::abs((ps.col(0).dot(x.col(1))) - x.col(0).dot(ps.col(1))) < tol * x.norm());
      CHECK((dense_Psigma_svd(pp.star()) * x - ps).norm() < tol);
      CHECK((pp.dense_Psigma() * x - ps).norm() < tol);
      // The range of Sigma is reproduced.
      const Eigen::MatrixXd w = Eigen::MatrixXd(pp.star().sigma) * test::random_matrix(pp.star().sigma.cols(), 2, 43);
      CHECK((pp.apply_Psigma(w) - w).norm() < 1e-8 * w.norm());
      CHECK(pp.apply_PLH(w).norm() < 1e-8 * w.norm());
      const CMatrix xc = x.cast<std::complex<double>>() * std::complex<double>(0.0, 2.0);
      CHECK((pp.apply_Psigma(xc) - ps.cast<std::complex<double>>() * std::complex<double>(0.0, 2.0)).norm() < tol);
    }
}

TEST_CASE("projector invariance across star matrix choices") {
  const auto tet = space_on(test::tetrahedron(), 1);
  const ProjectorPair lag = make_projectors(*tet, SigmaVariant::lagrange);
  CHECK(verify_invariance(lag, make_projectors(*tet, SigmaVariant::node), 8) <= 1e-8);
  CHECK(verify_invariance(lag, lag, 4) == 0.0);
  const auto sph = space_on(test::sphere(1), 2);
  CHECK(verify_invariance(make_projectors(*sph, SigmaVariant::lagrange),
                          make_projectors(*sph, SigmaVariant::orthonormal), 8) <= 1e-8);
}

TEST_CASE("torus solenoidal space includes two global cycles") {
  const auto mesh = test::torus(8, 4);
  const auto s = space_on(mesh, 0);
  const StarMatrix st = star_on(*s, SigmaVariant::lagrange);
  const int rank = numerical_rank(singular_values(dense(st)));
  const int nullity = s->size() - rank;
  CHECK(nullity == mesh->num_corner_vertices() - 1 + 2);
}

TEST_CASE("triplet export") {
  const StarMatrix st = star_on(*space_on(test::tetrahedron(), 0), SigmaVariant::lagrange);
  std::ostringstream out;
  write_sigma_triplets(st, out);
  std::istringstream in(out.str());
  std::string hash;
  long rows = 0, cols = 0, nnz = 0;
  in >> hash >> rows >> cols >> nnz;
  CHECK(hash == "#");
  CHECK(rows == 6);
  CHECK(cols == 4);
  CHECK(nnz == 12);
  Eigen::MatrixXd back = Eigen::MatrixXd::Zero(rows, cols);
  long r, c;
  double v;
  long read = 0;
  while (in >> r >> c >> v) {
    back(r, c) = v;
    ++read;
  }
  CHECK(read == nnz);
  CHECK((back - dense(st)).norm() < 1e-15);
}

TEST_CASE("mismatched orders and variant names") {
  const auto mesh = test::tetrahedron();
  CHECK_THROWS_AS(assemble_sigma(build_gwp(mesh, 1), build_charge_space(mesh, 0), SigmaVariant::lagrange),
                  BasisError);
  CHECK(parse_sigma_variant("node") == SigmaVariant::node);
  CHECK(std::string(to_string(SigmaVariant::orthonormal)) == "orthonormal");
  CHECK_THROWS(parse_sigma_variant("bogus"));
}
