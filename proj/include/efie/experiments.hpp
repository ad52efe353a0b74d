#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "efie/mesh.hpp"
#include "efie/operators.hpp"
#include "efie/precond.hpp"

namespace efie {

struct MeshSource {
  enum class Kind { file, sphere, torus };
  Kind kind = Kind::sphere;
  std::filesystem::path path;
  int subdivisions = 1;
  double radius = 1.0;
  int n_major = 16;
  int n_minor = 8;
  double major_radius = 2.0;
  double minor_radius = 0.5;
  int geometric_order = 2;  // generated meshes only
};

enum class PrecondMode { on, off, both };

struct ExperimentConfig {
  MeshSource mesh;
  int order = 0;
  std::vector<double> frequencies{1.0};
  PrecondMode precond = PrecondMode::both;
  std::filesystem::path out_dir = "efie_out";
  int quad_order = 0;  // Sauter-Schwab points per dimension; 0 keeps the default
  double cg_tol = 1e-10;
  double gmres_tol = 1e-8;
  int gmres_restart = 50;
  int gmres_max_iter = 2000;
  bool gmres = true;  // report GMRES iteration counts in sweeps
  std::vector<int> levels{0, 1, 2};  // sweep-h subdivision levels
  std::optional<double> c_frequency;  // frequency used for C; default: highest
  int angles = 181;  // samples on [0, 180] degrees
  double amplitude = 1.0;  // incident field, V/m
  std::uint64_t seed = 1;
};

// "a,b,c" lists or "lo:hi:count" log-spaced ranges, in Hz. Throws Error on
// non-positive or malformed entries.
std::vector<double> parse_frequencies(const std::string& spec);
PrecondMode parse_precond_mode(const std::string& s);
const char* to_string(PrecondMode m);

std::shared_ptr<const SurfaceMesh> load_mesh(const MeshSource& src);
QuadratureConfig quadrature_for(const ExperimentConfig& cfg, int order);

struct FrequencyRow {
  double f_hz = 0.0;
  double cond_plain = 0.0;
  double cond_precond = 0.0;
  int gmres_plain = -1;
  int gmres_precond = -1;
  std::string error;
};

struct HRow {
  int level = 0;
  int unknowns = 0;
  double h_avg = 0.0;
  double cond_plain = 0.0;
  double cond_precond = 0.0;
  std::string error;
};

struct RcsCurves {
  std::vector<double> theta_deg;
  std::vector<double> precond_dbsm;  // empty when precond is off
  std::vector<double> plain_dbsm;    // empty when precond is on
  std::vector<double> mie_dbsm;      // empty without oracle
  double rms_precond = -1.0;
  double rms_plain = -1.0;
};

struct CurrentSample {
  int cell = 0;
  Vec3 centroid;
  double precond_db = 0.0;
  double plain_db = 0.0;
};

struct SurfaceCurrents {
  std::vector<double> dof_precond;
  std::vector<double> dof_plain;
  std::vector<CurrentSample> cells;
};

// Computation cores; the cmd_* wrappers add CSV and manifest output.
std::vector<FrequencyRow> sweep_frequency(const ExperimentConfig& cfg, std::ostream* log = nullptr);
std::vector<HRow> sweep_h(const ExperimentConfig& cfg, std::ostream* log = nullptr);
RcsCurves compute_rcs(const ExperimentConfig& cfg, double frequency_hz);
SurfaceCurrents compute_surface_current(const ExperimentConfig& cfg, double frequency_hz);

int cmd_sweep_frequency(const ExperimentConfig& cfg, std::ostream& log);
int cmd_sweep_h(const ExperimentConfig& cfg, std::ostream& log);
int cmd_rcs(const ExperimentConfig& cfg, std::ostream& log);
int cmd_surface_current(const ExperimentConfig& cfg, std::ostream& log);
int cmd_mesh_info(const ExperimentConfig& cfg, std::ostream& log);

// Writes manifest.json (configuration, library versions, seed) for a command.
void write_manifest(const ExperimentConfig& cfg, const std::string& command,
                    const std::vector<std::string>& outputs);

}  // namespace efie
