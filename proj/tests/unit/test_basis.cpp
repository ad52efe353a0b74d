#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "../support/fixtures.hpp"
#include "efie/basis.hpp"
#include "efie/errors.hpp"
#include "efie/triangle_rules.hpp"

using namespace efie;

namespace {

// Reference point at parameter t along local edge e, from corner (e+1)%3 to (e+2)%3.
Vec2 edge_point(int e, double t) {
  const Vec2 corners[3] = {{0, 0}, {1, 0}, {0, 1}};
  return (1.0 - t) * corners[(e + 1) % 3] + t * corners[(e + 2) % 3];
}

// Unit co-normal of a cell at a point of local edge e, pointing out of the cell.
Vec3 outward_conormal(const SurfaceMesh& mesh, int cell, int e, double t) {
  const ReferenceMap map = mesh.reference_map(cell);
  const Vec2 x = edge_point(e, t);
  const Vec2 corners[3] = {{0, 0}, {1, 0}, {0, 1}};
  const Mat32 jac = map.jacobian(x);
  const Vec3 tangent = jac * (corners[(e + 2) % 3] - corners[(e + 1) % 3]);
  Vec3 nu = tangent.cross(map.normal(x)).normalized();
  const Vec3 inward = map.point(Vec2(1.0 / 3, 1.0 / 3)) - map.point(x);
  if (nu.dot(inward) > 0.0) nu = -nu;
  return nu;
}

}  // namespace

TEST_CASE("dimension formulas on the tetrahedron shell") {
  const auto tet = test::tetrahedron();
  CHECK(build_gwp(tet, 0).size() == 6);
  CHECK(build_gwp(tet, 1).size() == 20);
  CHECK(build_charge_space(tet, 0).size() == 4);
  CHECK(build_charge_space(tet, 2).size() == 24);
  CHECK(gwp_dimension(5670, 3780, 2) == 39690);
  CHECK(charge_dimension(3780, 2) == 22680);
}

TEST_CASE("invalid orders and meshes are rejected") {
  CHECK_THROWS_AS(build_gwp(test::tetrahedron(), -1), BasisError);
  CHECK_THROWS_AS(build_gwp(test::tetrahedron(), kMaxBasisOrder + 1), BasisError);
  const auto raw = std::make_shared<const SurfaceMesh>(test::tetrahedron_raw());
  CHECK_THROWS_AS(build_gwp(raw, 1), BasisError);
}

TEST_CASE("order zero is RWG scaled to unit edge flux") {
  // Hand-coded RWG on flat cells: (r - v_opposite) / (2A) on cell_plus and
  // the negative on cell_minus.
  const auto mesh = test::tetrahedron();
  const BasisSpace space = build_gwp(mesh, 0);
  for (int c = 0; c < mesh->num_cells(); ++c) {
    const ReferenceMap map = mesh->reference_map(c);
    const double two_area = map.area_element(Vec2(0.3, 0.3));
    for (const Vec2& xi : {Vec2(0.2, 0.3), Vec2(0.6, 0.1)}) {
      const Vec3 r = map.point(xi);
      for (const BasisValue& b : evaluate_basis(space, c, xi)) {
        const InternalEdge& e = mesh->internal_edges()[b.dof];
        const bool plus = e.cell_plus == c;
        const int local = plus ? e.local_plus : e.local_minus;
        const Vec3 v_opp = mesh->nodes()[mesh->cell(c).corner(local)];
        const double s = plus ? 1.0 : -1.0;
        CHECK((b.value - s * (r - v_opp) / two_area).norm() < 1e-14);
        CHECK(b.divergence == doctest::Approx(s * 2.0 / two_area).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("normal traces are continuous across every internal edge") {
  for (const auto& [name, mesh] : test::suite_meshes()) {
    for (int p = 0; p <= 3; ++p) {
      CAPTURE(name);
      CAPTURE(p);
      const BasisSpace space = build_gwp(mesh, p);
      double worst = 0.0, scale = 0.0;
      for (const InternalEdge& e : mesh->internal_edges()) {
        for (int s = 0; s < p + 2; ++s) {
          const double t = (s + 0.5) / (p + 2);
          // The two cells run along the edge in opposite directions.
          const Vec2 xp = edge_point(e.local_plus, t), xm = edge_point(e.local_minus, 1.0 - t);
          const Vec3 nup = outward_conormal(*mesh, e.cell_plus, e.local_plus, t);
          const Vec3 num = outward_conormal(*mesh, e.cell_minus, e.local_minus, 1.0 - t);
          REQUIRE((mesh->reference_map(e.cell_plus).point(xp) - mesh->reference_map(e.cell_minus).point(xm)).norm() <
                  1e-12);
          Eigen::VectorXd trace = Eigen::VectorXd::Zero(space.size());
          for (const BasisValue& b : evaluate_basis(space, e.cell_plus, xp)) trace[b.dof] += b.value.dot(nup);
          for (const BasisValue& b : evaluate_basis(space, e.cell_minus, xm)) trace[b.dof] += b.value.dot(num);
          worst = std::max(worst, trace.cwiseAbs().maxCoeff());
          for (const BasisValue& b : evaluate_basis(space, e.cell_plus, xp)) scale = std::max(scale, b.value.norm());
        }
      }
      CHECK(worst < 1e-11 * scale);
    }
  }
}

TEST_CASE("cell dofs have zero normal trace on their cell boundary") {
  const auto mesh = test::sphere(0);
  for (int p = 1; p <= 3; ++p) {
    const BasisSpace space = build_gwp(mesh, p);
    for (int c = 0; c < mesh->num_cells(); c += 5) {
      for (int e = 0; e < 3; ++e) {
        for (double t : {0.1, 0.5, 0.8}) {
          const Vec3 nu = outward_conormal(*mesh, c, e, t);
          for (const BasisValue& b : evaluate_basis(space, c, edge_point(e, t)))
            if (space.descriptor(b.dof).kind == DofDescriptor::Kind::cell) CHECK(std::abs(b.value.dot(nu)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("local Gram matrices are nonsingular") {
  const auto mesh = test::sphere(1);
  for (int p = 0; p <= 3; ++p) {
    const BasisSpace space = build_gwp(mesh, p);
    const TriangleRule rule = triangle_rule(2 * p + 4);
    for (int c = 0; c < mesh->num_cells(); c += 13) {
      const int n = space.local_size();
      Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
      const ReferenceMap map = mesh->reference_map(c);
      for (int q = 0; q < rule.size(); ++q) {
        const auto vals = evaluate_basis(space, c, rule.points[q]);
        const double w = rule.weights[q] * map.area_element(rule.points[q]);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) gram(i, j) += w * vals[i].value.dot(vals[j].value);
      }
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
      CHECK(eig.eigenvalues().minCoeff() > 1e-10 * eig.eigenvalues().maxCoeff());
    }
  }
}

TEST_CASE("reference span contains all vector polynomials of degree p") {
  for (int p = 0; p <= 3; ++p) {
    const auto funcs = gwp_reference_functions(p);
    REQUIRE(static_cast<int>(funcs.size()) == (p + 1) * (p + 3));
    // Sample on enough points to make the least-squares fit exact.
    const TriangleRule rule = triangle_rule(2 * p + 6);
    const int m = rule.size();
    Eigen::MatrixXd a(2 * m, funcs.size());
    for (int q = 0; q < m; ++q)
      for (std::size_t f = 0; f < funcs.size(); ++f) {
        a(2 * q, f) = funcs[f].field[0](rule.points[q]);
        a(2 * q + 1, f) = funcs[f].field[1](rule.points[q]);
      }
    CHECK(Eigen::JacobiSVD<Eigen::MatrixXd>(a).rank() == static_cast<Eigen::Index>(funcs.size()));
    for (int da = 0; da <= p; ++da)
      for (int db = 0; da + db <= p; ++db)
        for (int comp = 0; comp < 2; ++comp) {
          Eigen::VectorXd target = Eigen::VectorXd::Zero(2 * m);
          for (int q = 0; q < m; ++q)
            target[2 * q + comp] = std::pow(rule.points[q].x(), da) * std::pow(rule.points[q].y(), db);
          const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(target);
          CHECK((a * coef - target).norm() < 1e-10 * target.norm());
        }
  }
}

TEST_CASE("reference divergences match the polynomial fields") {
  for (int p = 0; p <= 3; ++p) {
    for (const ReferenceFunction& f : gwp_reference_functions(p)) {
      const Poly2 div = f.field[0].du() + f.field[1].dv();
      for (const Vec2& x : {Vec2(0.1, 0.1), Vec2(0.5, 0.2), Vec2(0.2, 0.7)}) CHECK(std::abs(div(x) - f.divergence(x)) < 1e-12);
    }
  }
}

TEST_CASE("divergence integrals are Jacobian free") {
  const auto mesh = test::sphere(1);
  for (int p = 0; p <= 2; ++p) {
    const BasisSpace space = build_gwp(mesh, p);
    const TriangleRule rule = triangle_rule(2 * p + 6);
    for (int c = 0; c < mesh->num_cells(); c += 7) {
      const ReferenceMap map = mesh->reference_map(c);
      Eigen::VectorXd phys = Eigen::VectorXd::Zero(space.local_size());
      for (int q = 0; q < rule.size(); ++q) {
        const auto vals = evaluate_basis(space, c, rule.points[q]);
        for (int i = 0; i < space.local_size(); ++i)
          phys[i] += rule.weights[q] * map.area_element(rule.points[q]) * vals[i].divergence;
      }
      const auto dofs = space.cell_dofs(c);
      for (int i = 0; i < space.local_size(); ++i)
        CHECK(std::abs(phys[i] - dofs[i].sign * space.reference_functions()[i].divergence.integral()) < 1e-13);
    }
  }
}

TEST_CASE("order zero divergence is constant on flat cells") {
  const auto mesh = test::sphere(1, 1);
  const BasisSpace space = build_gwp(mesh, 0);
  for (int c = 0; c < mesh->num_cells(); c += 3) {
    const auto a = evaluate_basis(space, c, Vec2(0.1, 0.1));
    const auto b = evaluate_basis(space, c, Vec2(0.2, 0.7));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].divergence == doctest::Approx(b[i].divergence).epsilon(1e-13));
  }
}

TEST_CASE("evaluation outside the reference triangle is rejected") {
  const BasisSpace space = build_gwp(test::tetrahedron(), 1);
  CHECK_THROWS_AS(evaluate_basis(space, 0, Vec2(0.8, 0.8)), BasisError);
  CHECK_THROWS_AS(evaluate_basis(space, 0, Vec2(-0.1, 0.2)), BasisError);
}

TEST_CASE("charge space Kronecker property and partition of unity") {
  const auto mesh = test::sphere(0);
  for (int p = 0; p <= 3; ++p) {
    const ChargeSpace charge = build_charge_space(mesh, p);
    const int n = charge.local_size();
    REQUIRE(n == (p + 1) * (p + 2) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(charge.evaluate(charge.dof(2, i), charge.reference_nodes()[j]) - (i == j ? 1.0 : 0.0)) < 1e-13);
    for (const Vec2& x : {Vec2(0.13, 0.21), Vec2(0.6, 0.3)}) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += charge.evaluate(charge.dof(5, i), x);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("order one charge nodes are the cell corners") {
  const auto mesh = test::tetrahedron();
  const ChargeSpace charge = build_charge_space(mesh, 1);
  for (int c = 0; c < mesh->num_cells(); ++c) {
    for (int i = 0; i < 3; ++i) {
      const Vec3 pos = charge.node_position(charge.dof(c, i));
      bool is_corner = false;
      for (int k = 0; k < 3; ++k) is_corner |= (pos - mesh->nodes()[mesh->cell(c).corner(k)]).norm() < 1e-15;
      CHECK(is_corner);
    }
  }
  CHECK(charge.node_position(charge.dof(0, 0)) != charge.node_position(charge.dof(0, 1)));
}
