#include <cmath>
#include <map>
#include <tuple>

#include "cell_tables.hpp"
#include "efie/errors.hpp"
#include "efie/operators.hpp"

namespace efie {
namespace detail {

ReferenceTable sample_reference(const std::vector<ReferenceFunction>& fns, const std::vector<Vec2>& pts) {
  const auto nq = static_cast<Eigen::Index>(pts.size());
  const auto nf = static_cast<Eigen::Index>(fns.size());
  ReferenceTable t;
  t.fu.resize(nq, nf);
  t.fv.resize(nq, nf);
  t.div.resize(nq, nf);
  for (Eigen::Index q = 0; q < nq; ++q)
    for (Eigen::Index i = 0; i < nf; ++i) {
      t.fu(q, i) = fns[i].field[0](pts[q]);
      t.fv(q, i) = fns[i].field[1](pts[q]);
      t.div(q, i) = fns[i].divergence(pts[q]);
    }
  return t;
}

CellTable make_cell_table(const SurfaceMesh& mesh, int cell, const std::vector<Vec2>& pts,
                          const ReferenceTable& ref) {
  const ReferenceMap map = mesh.reference_map(cell);
  const auto nq = static_cast<Eigen::Index>(pts.size());
  CellTable t;
  t.pos.resize(nq, 3);
  for (auto& f : t.field) f.resize(nq, ref.fu.cols());
  for (Eigen::Index q = 0; q < nq; ++q) {
    t.pos.row(q) = map.point(pts[q]).transpose();
    const Mat32 jac = map.jacobian(pts[q]);
    for (int d = 0; d < 3; ++d) t.field[d].row(q) = jac(d, 0) * ref.fu.row(q) + jac(d, 1) * ref.fv.row(q);
  }
  t.div = &ref.div;
  return t;
}

}  // namespace detail

namespace {

using detail::CellTable;
using detail::ReferenceTable;

cdouble kernel_value(double k, KernelPart part, double R) {
  switch (part) {
    case KernelPart::static_part:
      return static_green(R);
    case KernelPart::dynamic_part:
      return dynamic_green(k, R);
    case KernelPart::full:
    default:
      return helmholtz_green(k, R);
  }
}

struct LocalBlocks {
  Eigen::MatrixXd ts_re, ts_im, th_re, th_im;

  explicit LocalBlocks(Eigen::Index n)
      : ts_re(Eigen::MatrixXd::Zero(n, n)),
        ts_im(Eigen::MatrixXd::Zero(n, n)),
        th_re(Eigen::MatrixXd::Zero(n, n)),
        th_im(Eigen::MatrixXd::Zero(n, n)) {}

  bool finite() const {
    return ts_re.allFinite() && ts_im.allFinite() && th_re.allFinite() && th_im.allFinite();
  }
};

// Paired points: sum_q w_q G(x_q, y_q) A(x_q) . B(y_q).
void accumulate_paired(const CellTable& ta, const CellTable& tb, const std::vector<double>& w, double k,
                       KernelPart part, LocalBlocks& out) {
  const auto nq = static_cast<Eigen::Index>(w.size());
  Eigen::VectorXd cr(nq), ci(nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const cdouble g = w[q] * kernel_value(k, part, (ta.pos.row(q) - tb.pos.row(q)).norm());
    cr[q] = g.real();
    ci[q] = g.imag();
  }
  for (int d = 0; d < 3; ++d) {
    out.ts_re.noalias() += ta.field[d].transpose() * (cr.asDiagonal() * tb.field[d]);
    out.ts_im.noalias() += ta.field[d].transpose() * (ci.asDiagonal() * tb.field[d]);
  }
  out.th_re.noalias() += ta.div->transpose() * (cr.asDiagonal() * *tb.div);
  out.th_im.noalias() += ta.div->transpose() * (ci.asDiagonal() * *tb.div);
}

// Tensor rule: M(q, r) = w_q w_r G(x_q, y_r).
void accumulate_tensor(const CellTable& ta, const CellTable& tb, const Eigen::VectorXd& w, double k,
                       KernelPart part, LocalBlocks& out) {
  const Eigen::Index qa = ta.pos.rows(), qb = tb.pos.rows(), n = out.ts_re.rows();
  Eigen::MatrixXd mr(qa, qb), mi(qa, qb);
  for (Eigen::Index r = 0; r < qb; ++r)
    for (Eigen::Index q = 0; q < qa; ++q) {
      const cdouble g = w[q] * w[r] * kernel_value(k, part, (ta.pos.row(q) - tb.pos.row(r)).norm());
      mr(q, r) = g.real();
      mi(q, r) = g.imag();
    }
  Eigen::MatrixXd stack(qb, 4 * n);
  for (int d = 0; d < 3; ++d) stack.middleCols(d * n, n) = tb.field[d];
  stack.middleCols(3 * n, n) = *tb.div;
  const Eigen::MatrixXd yr = mr * stack;
  const Eigen::MatrixXd yi = mi * stack;
  for (int d = 0; d < 3; ++d) {
    out.ts_re.noalias() += ta.field[d].transpose() * yr.middleCols(d * n, n);
    out.ts_im.noalias() += ta.field[d].transpose() * yi.middleCols(d * n, n);
  }
  out.th_re.noalias() += ta.div->transpose() * yr.middleCols(3 * n, n);
  out.th_im.noalias() += ta.div->transpose() * yi.middleCols(3 * n, n);
}

struct SingularEntry {
  PairRule rule;
  ReferenceTable ra, rb;
};

int perm_code(const std::array<int, 3>& p) { return 3 * p[0] + p[1]; }

}  // namespace

EfieBlocks assemble_blocks(const BasisSpace& space, double k, const QuadratureConfig& cfg, KernelPart part) {
  if (k < 0.0) throw Error("wavenumber must be non-negative");
  const SurfaceMesh& mesh = space.mesh();
  const int nc = mesh.num_cells();
  const Eigen::Index n = space.local_size();
  const auto& fns = space.reference_functions();

  const TriangleRule far_rule = triangle_rule(cfg.far_degree);
  const TriangleRule near_rule = triangle_rule(cfg.far_degree + cfg.near_boost);
  const ReferenceTable far_ref = detail::sample_reference(fns, far_rule.points);
  const ReferenceTable near_ref = detail::sample_reference(fns, near_rule.points);
  const Eigen::VectorXd far_w = Eigen::Map<const Eigen::VectorXd>(far_rule.weights.data(), far_rule.size());
  const Eigen::VectorXd near_w = Eigen::Map<const Eigen::VectorXd>(near_rule.weights.data(), near_rule.size());
  std::vector<CellTable> far_cells, near_cells;
  far_cells.reserve(nc);
  near_cells.reserve(nc);
  for (int c = 0; c < nc; ++c) {
    far_cells.push_back(detail::make_cell_table(mesh, c, far_rule.points, far_ref));
    near_cells.push_back(detail::make_cell_table(mesh, c, near_rule.points, near_ref));
  }

  std::map<std::tuple<int, int, int>, SingularEntry> singular;
  auto singular_entry = [&](int a, int b, PairClass cls) -> const SingularEntry& {
    const PairFrame frame = pair_frame(mesh, a, b, cls);
    const auto key = std::make_tuple(static_cast<int>(cls), perm_code(frame.perm_a), perm_code(frame.perm_b));
    auto it = singular.find(key);
    if (it == singular.end()) {
      SingularEntry e;
      e.rule = pair_rule(mesh, a, b, cls, cfg);
      e.ra = detail::sample_reference(fns, e.rule.x);
      e.rb = detail::sample_reference(fns, e.rule.y);
      it = singular.emplace(key, std::move(e)).first;
    }
    return it->second;
  };

  EfieBlocks blocks;
  blocks.k = k;
  blocks.Ts = CMatrix::Zero(space.size(), space.size());
  blocks.Th = CMatrix::Zero(space.size(), space.size());

  for (int a = 0; a < nc; ++a) {
    const auto dofs_a = space.cell_dofs(a);
    for (int b = a; b < nc; ++b) {
      const PairClass cls = classify_pair(mesh, a, b, cfg.near_threshold);
      LocalBlocks local(n);
      if (cls == PairClass::far) {
        accumulate_tensor(far_cells[a], far_cells[b], far_w, k, part, local);
      } else if (cls == PairClass::near) {
        accumulate_tensor(near_cells[a], near_cells[b], near_w, k, part, local);
      } else {
        const SingularEntry& e = singular_entry(a, b, cls);
        const CellTable ta = detail::make_cell_table(mesh, a, e.rule.x, e.ra);
        const CellTable tb = detail::make_cell_table(mesh, b, e.rule.y, e.rb);
        accumulate_paired(ta, tb, e.rule.w, k, part, local);
      }
      if (!local.finite())
        throw QuadratureError(std::string("non-finite interaction for ") + to_string(cls) + " pair (" +
                              std::to_string(a) + ", " + std::to_string(b) + ")");
      if (a == b) {
        local.ts_re = 0.5 * (local.ts_re + local.ts_re.transpose()).eval();
        local.ts_im = 0.5 * (local.ts_im + local.ts_im.transpose()).eval();
        local.th_re = 0.5 * (local.th_re + local.th_re.transpose()).eval();
        local.th_im = 0.5 * (local.th_im + local.th_im.transpose()).eval();
      }
      const auto dofs_b = space.cell_dofs(b);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          const double s = dofs_a[i].sign * dofs_b[j].sign;
          const cdouble ts(s * local.ts_re(i, j), s * local.ts_im(i, j));
          const cdouble th(s * local.th_re(i, j), s * local.th_im(i, j));
          const int gi = dofs_a[i].dof, gj = dofs_b[j].dof;
          blocks.Ts(gi, gj) += ts;
          blocks.Th(gi, gj) += th;
          if (a != b) {
            blocks.Ts(gj, gi) += ts;
            blocks.Th(gj, gi) += th;
          }
        }
    }
  }
  return blocks;
}

CMatrix assemble_Ts(const BasisSpace& space, double k, const QuadratureConfig& cfg, KernelPart part) {
  return assemble_blocks(space, k, cfg, part).Ts;
}

CMatrix assemble_Th(const BasisSpace& space, double k, const QuadratureConfig& cfg, KernelPart part) {
  return assemble_blocks(space, k, cfg, part).Th;
}

CMatrix efie_matrix(const EfieBlocks& blocks) {
  if (!(blocks.k > 0.0)) throw Error("the EFIE matrix requires k > 0");
  const cdouble jk(0.0, blocks.k);
  return jk * blocks.Ts + blocks.Th / jk;
}

}  // namespace efie
