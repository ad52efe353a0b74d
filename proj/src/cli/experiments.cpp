#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "efie/analysis.hpp"
#include "efie/errors.hpp"
#include "efie/experiments.hpp"
#include "efie/linalg.hpp"

namespace efie {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants_plain(PrecondMode m) { return m != PrecondMode::on; }
bool wants_precond(PrecondMode m) { return m != PrecondMode::off; }

struct Discretization {
  std::shared_ptr<const SurfaceMesh> mesh;
  BasisSpace basis;
  QuadratureConfig quad;
  std::unique_ptr<ProjectorPair> pp;
  Eigen::MatrixXd p_sigma;
};

Discretization discretize(const ExperimentConfig& cfg, std::shared_ptr<const SurfaceMesh> mesh, bool projectors) {
  Discretization d;
  d.mesh = std::move(mesh);
  d.basis = build_gwp(d.mesh, cfg.order);
  d.quad = quadrature_for(cfg, cfg.order);
  if (projectors) {
    CgOptions cg;
    cg.tol = cfg.cg_tol;
    d.pp = std::make_unique<ProjectorPair>(make_projectors(d.basis, SigmaVariant::lagrange, cg));
    d.p_sigma = d.pp->dense_Psigma();
  }
  return d;
}

double scaling_constant(const ExperimentConfig& cfg, const Discretization& d, double fallback_hz) {
  const double f = cfg.c_frequency.value_or(fallback_hz);
  return estimate_C(assemble_blocks(d.basis, wavenumber(f), d.quad), d.p_sigma);
}

PlaneWave default_wave(const ExperimentConfig& cfg, double f) {
  PlaneWave w;
  w.frequency = f;
  w.amplitude = cfg.amplitude;
  return w;
}

std::vector<double> angle_grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(std::max(n, 2)));
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 180.0 * double(i) / double(t.size() - 1);
  return t;
}

std::vector<double> to_dbsm(const std::vector<double>& sigma) {
  std::vector<double> out;
  out.reserve(sigma.size());
  for (double s : sigma) out.push_back(efie::to_dbsm(s));
  return out;
}

std::ofstream open_csv(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir / name);
  if (!out) throw Error("cannot write " + (cfg.out_dir / name).string());
  out << std::setprecision(12);
  return out;
}

void put(std::ostream& out, double v) {
  if (std::isnan(v))
    out << "nan";
  else
    out << v;
}

std::string mesh_label(const MeshSource& src) {
  switch (src.kind) {
    case MeshSource::Kind::file:
      return "file:" + src.path.string();
    case MeshSource::Kind::sphere:
      return "sphere:" + std::to_string(src.subdivisions);
    case MeshSource::Kind::torus:
      return "torus:" + std::to_string(src.n_major) + "," + std::to_string(src.n_minor);
  }
  return "unknown";
}

}  // namespace

std::vector<double> parse_frequencies(const std::string& spec) {
  std::vector<double> out;
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw Error("malformed frequency '" + s + "'");
    }
    if (used != s.size()) throw Error("malformed frequency '" + s + "'");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw Error("frequency range must read lo:hi:count");
    const double lo = number(parts[0]), hi = number(parts[1]);
    const int count = static_cast<int>(number(parts[2]));
    if (count < 1 || !(lo > 0.0) || !(hi > 0.0)) throw Error("frequency range needs positive bounds and count");
    // Endpoints are kept exact.
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : double(i) / (count - 1);
      out.push_back(i == 0 ? lo : i == count - 1 ? hi
                                                 : std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo))));
    }
  } else {
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  }
  if (out.empty()) throw Error("no frequencies given");
  for (double f : out)
    if (!(f > 0.0)) throw Error("frequencies must be positive");
  return out;
}

PrecondMode parse_precond_mode(const std::string& s) {
  if (s == "on") return PrecondMode::on;
  if (s == "off") return PrecondMode::off;
  if (s == "both") return PrecondMode::both;
  throw Error("precond must be on, off or both");
}

const char* to_string(PrecondMode m) {
  switch (m) {
    case PrecondMode::on:
      return "on";
    case PrecondMode::off:
      return "off";
    case PrecondMode::both:
      return "both";
  }
  return "unknown";
}

std::shared_ptr<const SurfaceMesh> load_mesh(const MeshSource& src) {
  switch (src.kind) {
    case MeshSource::Kind::file:
      return std::make_shared<const SurfaceMesh>(build_connectivity(parse_gmsh(src.path)));
    case MeshSource::Kind::sphere:
      return std::make_shared<const SurfaceMesh>(generate_sphere(src.radius, src.subdivisions, src.geometric_order));
    case MeshSource::Kind::torus:
      return std::make_shared<const SurfaceMesh>(
          generate_torus(src.major_radius, src.minor_radius, src.n_major, src.n_minor, src.geometric_order));
  }
  throw Error("unknown mesh source");
}

QuadratureConfig quadrature_for(const ExperimentConfig& cfg, int order) {
  QuadratureConfig q = default_quadrature(order);
  if (cfg.quad_order > 0) q.singular_order = cfg.quad_order;
  return q;
}

std::vector<FrequencyRow> sweep_frequency(const ExperimentConfig& cfg, std::ostream* log) {
  const bool plain = wants_plain(cfg.precond), pre = wants_precond(cfg.precond);
  const Discretization d = discretize(cfg, load_mesh(cfg.mesh), true);
  const HelmholtzSplit split = helmholtz_split(d.pp->star());
  const double fmax = *std::max_element(cfg.frequencies.begin(), cfg.frequencies.end());
  const double C = pre ? scaling_constant(cfg, d, fmax) : 1.0;
  if (log) *log << "N_p = " << d.basis.size() << ", C = " << C << '\n';
  std::vector<FrequencyRow> rows;
  for (double f : cfg.frequencies) {
    FrequencyRow row;
    row.f_hz = f;
    row.cond_plain = row.cond_precond = kNaN;
    try {
      const double k = wavenumber(f);
      const EfieBlocks blocks = assemble_blocks(d.basis, k, d.quad);
      const Excitation exc = assemble_excitations(d.basis, default_wave(cfg, f));
      if (plain) {
        row.cond_plain = split_condition_number(blocks, split);
        if (cfg.gmres)
          row.gmres_plain =
              gmres(efie_matrix(blocks), exc.e, cfg.gmres_restart, cfg.gmres_tol, cfg.gmres_max_iter).iterations;
      }
      if (pre) {
        const StabilizedSystem sys = assemble_stabilized(blocks, d.p_sigma, C);
        row.cond_precond = condition_number(sys.matrix);
        if (cfg.gmres)
          row.gmres_precond = gmres(sys.matrix, build_rhs(d.p_sigma, exc, C, k), cfg.gmres_restart, cfg.gmres_tol,
                                    cfg.gmres_max_iter)
                                  .iterations;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (log)
      *log << "f = " << f << " Hz: cond_plain = " << row.cond_plain << ", cond_precond = " << row.cond_precond
           << (row.error.empty() ? "" : " (" + row.error + ")") << '\n';
    rows.push_back(row);
  }
  return rows;
}

std::vector<HRow> sweep_h(const ExperimentConfig& cfg, std::ostream* log) {
  const bool plain = wants_plain(cfg.precond), pre = wants_precond(cfg.precond);
  const double f = cfg.frequencies.front();
  const double k = wavenumber(f);
  std::vector<int> levels = cfg.levels;
  if (cfg.mesh.kind == MeshSource::Kind::file) levels = {0};
  std::vector<HRow> rows;
  for (int level : levels) {
    HRow row;
    row.level = level;
    row.cond_plain = row.cond_precond = kNaN;
    try {
      MeshSource src = cfg.mesh;
      if (src.kind == MeshSource::Kind::sphere) src.subdivisions = level;
      if (src.kind == MeshSource::Kind::torus) {
        src.n_major <<= level;
        src.n_minor <<= level;
      }
      const Discretization d = discretize(cfg, load_mesh(src), true);
      row.unknowns = d.basis.size();
      row.h_avg = average_diameter(*d.mesh);
      const EfieBlocks blocks = assemble_blocks(d.basis, k, d.quad);
      if (plain) row.cond_plain = split_condition_number(blocks, helmholtz_split(d.pp->star()));
      if (pre) {
        const double C = cfg.c_frequency ? scaling_constant(cfg, d, f) : estimate_C(blocks, d.p_sigma);
        row.cond_precond = condition_number(assemble_stabilized(blocks, d.p_sigma, C).matrix);
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    if (log)
      *log << "level " << level << " (N = " << row.unknowns << ", h = " << row.h_avg
           << "): cond_plain = " << row.cond_plain << ", cond_precond = " << row.cond_precond
           << (row.error.empty() ? "" : " (" + row.error + ")") << '\n';
    rows.push_back(row);
  }
  return rows;
}

RcsCurves compute_rcs(const ExperimentConfig& cfg, double f) {
  const bool plain = wants_plain(cfg.precond), pre = wants_precond(cfg.precond);
  const Discretization d = discretize(cfg, load_mesh(cfg.mesh), pre);
  const double k = wavenumber(f);
  const PlaneWave wave = default_wave(cfg, f);
  RcsCurves out;
  out.theta_deg = angle_grid(cfg.angles);
  const std::vector<Vec3> dirs = phi0_cut(out.theta_deg);
  const EfieBlocks blocks = assemble_blocks(d.basis, k, d.quad);
  const Excitation exc = assemble_excitations(d.basis, wave);
  if (cfg.mesh.kind == MeshSource::Kind::sphere)
    out.mie_dbsm = to_dbsm(mie_rcs(cfg.mesh.radius, f, out.theta_deg, MieCut::e_plane));
  if (pre) {
    const double C = cfg.c_frequency ? scaling_constant(cfg, d, f) : estimate_C(blocks, d.p_sigma);
    const StabilizedSystem sys = assemble_stabilized(blocks, d.p_sigma, C);
    const StabilizedSolution sol = solve_stabilized(sys, build_rhs(d.p_sigma, exc, C, k), d.p_sigma);
    out.precond_dbsm = to_dbsm(rcs(far_field(d.basis, sol.j_sol, sol.j_nsol, k, dirs), wave.amplitude));
    if (!out.mie_dbsm.empty()) out.rms_precond = rcs_error(out.precond_dbsm, out.mie_dbsm);
  }
  if (plain) {
    const CVector j = solve_plain(blocks, exc.e);
    out.plain_dbsm = to_dbsm(rcs(far_field(d.basis, CVector::Zero(j.size()), j, k, dirs), wave.amplitude));
    if (!out.mie_dbsm.empty()) out.rms_plain = rcs_error(out.plain_dbsm, out.mie_dbsm);
  }
  return out;
}

SurfaceCurrents compute_surface_current(const ExperimentConfig& cfg, double f) {
  const bool plain = wants_plain(cfg.precond), pre = wants_precond(cfg.precond);
  const Discretization d = discretize(cfg, load_mesh(cfg.mesh), pre);
  const double k = wavenumber(f);
  const EfieBlocks blocks = assemble_blocks(d.basis, k, d.quad);
  const Excitation exc = assemble_excitations(d.basis, default_wave(cfg, f));
  SurfaceCurrents out;
  CVector j_pre, j_plain;
  if (pre) {
    const double C = cfg.c_frequency ? scaling_constant(cfg, d, f) : estimate_C(blocks, d.p_sigma);
    const StabilizedSystem sys = assemble_stabilized(blocks, d.p_sigma, C);
    const StabilizedSolution sol = solve_stabilized(sys, build_rhs(d.p_sigma, exc, C, k), d.p_sigma);
    j_pre = sol.j_sol + sol.j_nsol;
    for (Eigen::Index i = 0; i < j_pre.size(); ++i) out.dof_precond.push_back(std::abs(j_pre[i]));
  }
  if (plain) {
    j_plain = solve_plain(blocks, exc.e);
    for (Eigen::Index i = 0; i < j_plain.size(); ++i) out.dof_plain.push_back(std::abs(j_plain[i]));
  }
  const Vec2 centre(1.0 / 3.0, 1.0 / 3.0);
  auto sample = [&](const CVector& j, int c) {
    if (j.size() == 0) return kNaN;
    Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
    for (const BasisValue& b : evaluate_basis(d.basis, c, centre)) v += j[b.dof] * b.value.cast<cdouble>();
    return 20.0 * std::log10(v.norm());
  };
  for (int c = 0; c < d.mesh->num_cells(); ++c)
    out.cells.push_back({c, d.mesh->centroid(c), sample(j_pre, c), sample(j_plain, c)});
  return out;
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command, const std::vector<std::string>& outputs) {
  using nlohmann::json;
  json m;
  m["command"] = command;
  m["mesh"] = mesh_label(cfg.mesh);
  m["mesh_radius"] = cfg.mesh.radius;
  m["geometric_order"] = cfg.mesh.geometric_order;
  m["order"] = cfg.order;
  m["frequencies_hz"] = cfg.frequencies;
  m["precond"] = to_string(cfg.precond);
  const QuadratureConfig q = quadrature_for(cfg, cfg.order);
  m["quadrature"] = {{"far_degree", q.far_degree},
                     {"near_boost", q.near_boost},
                     {"near_threshold", q.near_threshold},
                     {"singular_order", q.singular_order}};
  m["cg_tol"] = cfg.cg_tol;
  m["gmres"] = {{"tol", cfg.gmres_tol}, {"restart", cfg.gmres_restart}, {"max_iter", cfg.gmres_max_iter}};
  m["levels"] = cfg.levels;
  if (cfg.c_frequency) m["c_frequency_hz"] = *cfg.c_frequency;
  m["angles"] = cfg.angles;
  m["amplitude_v_per_m"] = cfg.amplitude;
  m["seed"] = cfg.seed;
  m["versions"] = {{"efie", "1.0.0"},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"compiler", __VERSION__}};
  m["outputs"] = outputs;
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir / "manifest.json");
  out << m.dump(2) << '\n';
}

int cmd_sweep_frequency(const ExperimentConfig& cfg, std::ostream& log) {
  const auto rows = sweep_frequency(cfg, &log);
  const std::string name = "sweep_frequency_p" + std::to_string(cfg.order) + ".csv";
  std::ofstream out = open_csv(cfg, name);
  out << "f_hz,cond_plain,cond_precond,gmres_iters_plain,gmres_iters_precond\n";
  int failures = 0;
  for (const auto& r : rows) {
    out << r.f_hz << ',';
    put(out, r.cond_plain);
    out << ',';
    put(out, r.cond_precond);
    out << ',' << r.gmres_plain << ',' << r.gmres_precond << '\n';
    failures += !r.error.empty();
  }
  write_manifest(cfg, "sweep-frequency", {name});
  return failures == 0 ? 0 : 1;
}

int cmd_sweep_h(const ExperimentConfig& cfg, std::ostream& log) {
  const auto rows = sweep_h(cfg, &log);
  const std::string name = "sweep_h_p" + std::to_string(cfg.order) + ".csv";
  std::ofstream out = open_csv(cfg, name);
  out << "h_avg,cond_plain,cond_precond,level,unknowns\n";
  int failures = 0;
  for (const auto& r : rows) {
    out << r.h_avg << ',';
    put(out, r.cond_plain);
    out << ',';
    put(out, r.cond_precond);
    out << ',' << r.level << ',' << r.unknowns << '\n';
    failures += !r.error.empty();
  }
  write_manifest(cfg, "sweep-h", {name});
  return failures == 0 ? 0 : 1;
}

int cmd_rcs(const ExperimentConfig& cfg, std::ostream& log) {
  std::vector<std::string> outputs;
  for (double f : cfg.frequencies) {
    const RcsCurves c = compute_rcs(cfg, f);
    std::ostringstream name;
    name << "rcs_p" << cfg.order << "_f" << f << ".csv";
    std::ofstream out = open_csv(cfg, name.str());
    const bool pre = !c.precond_dbsm.empty(), plain = !c.plain_dbsm.empty(), mie = !c.mie_dbsm.empty();
    out << "angle_deg,sigma_dbsm_computed";
    if (mie) out << ",sigma_dbsm_mie";
    if (pre && plain) out << ",sigma_dbsm_plain";
    out << '\n';
    for (std::size_t i = 0; i < c.theta_deg.size(); ++i) {
      out << c.theta_deg[i] << ',' << (pre ? c.precond_dbsm[i] : c.plain_dbsm[i]);
      if (mie) out << ',' << c.mie_dbsm[i];
      if (pre && plain) out << ',' << c.plain_dbsm[i];
      out << '\n';
    }
    outputs.push_back(name.str());
    log << "rcs f = " << f << " Hz, p = " << cfg.order;
    if (pre && mie) log << ", rms_precond_db = " << c.rms_precond;
    if (plain && mie) log << ", rms_plain_db = " << c.rms_plain;
    if (!mie) log << ", no oracle";
    log << '\n';
  }
  write_manifest(cfg, "rcs", outputs);
  return 0;
}

int cmd_surface_current(const ExperimentConfig& cfg, std::ostream& log) {
  std::vector<std::string> outputs;
  for (double f : cfg.frequencies) {
    const SurfaceCurrents s = compute_surface_current(cfg, f);
    std::ostringstream stem;
    stem << "current_p" << cfg.order << "_f" << f;
    {
      std::ofstream out = open_csv(cfg, stem.str() + "_dofs.csv");
      out << "dof,abs_precond,abs_plain\n";
      const std::size_t n = std::max(s.dof_precond.size(), s.dof_plain.size());
      for (std::size_t i = 0; i < n; ++i) {
        out << i << ',';
        put(out, i < s.dof_precond.size() ? s.dof_precond[i] : kNaN);
        out << ',';
        put(out, i < s.dof_plain.size() ? s.dof_plain[i] : kNaN);
        out << '\n';
      }
    }
    {
      std::ofstream out = open_csv(cfg, stem.str() + "_cells.csv");
      out << "cell,x,y,z,j_db_precond,j_db_plain\n";
      for (const auto& c : s.cells) {
        out << c.cell << ',' << c.centroid.x() << ',' << c.centroid.y() << ',' << c.centroid.z() << ',';
        put(out, c.precond_db);
        out << ',';
        put(out, c.plain_db);
        out << '\n';
      }
    }
    outputs.push_back(stem.str() + "_dofs.csv");
    outputs.push_back(stem.str() + "_cells.csv");
    log << "surface current f = " << f << " Hz written to " << stem.str() << "_*.csv\n";
  }
  write_manifest(cfg, "surface-current", outputs);
  return 0;
}

int cmd_mesh_info(const ExperimentConfig& cfg, std::ostream& log) {
  const auto mesh = load_mesh(cfg.mesh);
  const int e = mesh->num_internal_edges(), c = mesh->num_cells(), p = cfg.order;
  log << "mesh: " << mesh_label(cfg.mesh) << '\n'
      << "vertices: " << mesh->num_corner_vertices() << '\n'
      << "internal_edges: " << e << '\n'
      << "cells: " << c << '\n'
      << "bodies: " << mesh->num_bodies() << '\n'
      << "euler_characteristic: " << euler_characteristic(*mesh) << '\n'
      << "geometric_order: " << mesh->geometric_order() << '\n'
      << "total_area: " << total_area(*mesh) << '\n'
      << "h_avg: " << average_diameter(*mesh) << '\n'
      << "N_p: " << gwp_dimension(e, c, p) << '\n'
      << "M_p: " << charge_dimension(c, p) << '\n';
  return 0;
}

}  // namespace efie
