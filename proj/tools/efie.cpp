#include <exception>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "efie/errors.hpp"
#include "efie/experiments.hpp"

namespace {

struct Options {
  std::string mesh_path;
  int sphere = -1;
  std::string torus;
  std::string freq = "1";
  std::string precond = "both";
  std::string levels = "0,1,2";
  double c_freq = 0.0;
  efie::ExperimentConfig cfg;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  return out;
}

efie::ExperimentConfig finish(Options& o) {
  efie::ExperimentConfig cfg = o.cfg;
  const int sources = int(!o.mesh_path.empty()) + int(o.sphere >= 0) + int(!o.torus.empty());
  if (sources > 1) throw efie::Error("choose one of --mesh, --sphere, --torus");
  if (!o.mesh_path.empty()) {
    cfg.mesh.kind = efie::MeshSource::Kind::file;
    cfg.mesh.path = o.mesh_path;
  } else if (!o.torus.empty()) {
    const auto n = parse_int_list(o.torus);
    if (n.size() != 2) throw efie::Error("--torus expects nM,nm");
    cfg.mesh.kind = efie::MeshSource::Kind::torus;
    cfg.mesh.n_major = n[0];
    cfg.mesh.n_minor = n[1];
  } else {
    cfg.mesh.kind = efie::MeshSource::Kind::sphere;
    cfg.mesh.subdivisions = o.sphere >= 0 ? o.sphere : 1;
  }
  if (cfg.order < 0) throw efie::Error("--order must be non-negative");
  cfg.frequencies = efie::parse_frequencies(o.freq);
  cfg.precond = efie::parse_precond_mode(o.precond);
  cfg.levels = parse_int_list(o.levels);
  if (o.c_freq > 0.0) cfg.c_frequency = o.c_freq;
  return cfg;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--mesh", o.mesh_path, "Gmsh 2.2 ASCII surface mesh");
  cmd->add_option("--sphere", o.sphere, "icosphere subdivision level");
  cmd->add_option("--torus", o.torus, "torus segments nM,nm");
  cmd->add_option("--radius", o.cfg.mesh.radius, "sphere radius in m");
  cmd->add_option("--geometric-order", o.cfg.mesh.geometric_order, "1 flat, 2 curved cells")
      ->check(CLI::Range(1, 2));
  cmd->add_option("--order", o.cfg.order, "basis order p");
  cmd->add_option("--freq", o.freq, "frequencies: a,b,c or lo:hi:count (Hz)");
  cmd->add_option("--precond", o.precond, "on, off or both");
  cmd->add_option("--out", o.cfg.out_dir, "output directory");
  cmd->add_option("--quad-order", o.cfg.quad_order, "singular quadrature points per dimension");
  cmd->add_option("--cg-tol", o.cfg.cg_tol, "projector CG tolerance");
  cmd->add_option("--gmres-tol", o.cfg.gmres_tol, "GMRES relative tolerance");
  cmd->add_option("--gmres-max-iter", o.cfg.gmres_max_iter, "GMRES iteration cap");
  cmd->add_flag("!--no-gmres", o.cfg.gmres, "skip GMRES iteration counts");
  cmd->add_option("--levels", o.levels, "sweep-h subdivision levels, comma separated");
  cmd->add_option("--c-freq", o.c_freq, "frequency used to fix the scaling constant C");
  cmd->add_option("--angles", o.cfg.angles, "RCS samples over [0, 180] deg");
  cmd->add_option("--amplitude", o.cfg.amplitude, "incident field amplitude in V/m")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-frequency stable high-order EFIE solver"};
  app.require_subcommand(1);
  Options o;
  using Command = int (*)(const efie::ExperimentConfig&, std::ostream&);
  const std::pair<const char*, Command> verbs[] = {
      {"sweep-frequency", efie::cmd_sweep_frequency}, {"sweep-h", efie::cmd_sweep_h},
      {"rcs", efie::cmd_rcs},                         {"surface-current", efie::cmd_surface_current},
      {"mesh-info", efie::cmd_mesh_info}};
  const char* help[] = {"condition number and GMRES iterations against frequency",
                        "condition number against mesh size", "bistatic RCS cut with Mie reference",
                        "surface current magnitudes", "mesh statistics and dof counts"};
  std::vector<std::pair<CLI::App*, Command>> cmds;
  for (std::size_t i = 0; i < std::size(verbs); ++i) {
    CLI::App* sub = app.add_subcommand(verbs[i].first, help[i]);
    add_common(sub, o);
    cmds.emplace_back(sub, verbs[i].second);
  }
  CLI11_PARSE(app, argc, argv);
  try {
    const efie::ExperimentConfig cfg = finish(o);
    for (const auto& [sub, run] : cmds)
      if (sub->parsed()) return run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "efie: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
