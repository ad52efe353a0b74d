#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../support/fixtures.hpp"
#include "efie/errors.hpp"
#include "efie/analysis.hpp"
#include "efie/experiments.hpp"

using namespace efie;
namespace fs = std::filesystem;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Csv csv;
  std::string line;
  std::getline(in, line);
  csv.header = split(line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    for (const std::string& s : split(line)) row.push_back(std::stod(s));
    REQUIRE(row.size() == csv.header.size());
    csv.rows.push_back(row);
  }
  return csv;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "efie_test_cli" / name;
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig sphere_config(int subdivisions, int p, const std::string& out) {
  ExperimentConfig cfg;
  cfg.mesh.kind = MeshSource::Kind::sphere;
  cfg.mesh.subdivisions = subdivisions;
  cfg.order = p;
  cfg.out_dir = scratch(out);
  return cfg;
}

ExperimentConfig torus_config(int n_major, int n_minor, int p, const std::string& out) {
  ExperimentConfig cfg;
  cfg.mesh.kind = MeshSource::Kind::torus;
  cfg.mesh.n_major = n_major;
  cfg.mesh.n_minor = n_minor;
  cfg.order = p;
  cfg.out_dir = scratch(out);
  return cfg;
}

struct RunResult {
  int status;
  std::string output;
};

RunResult run(const std::string& args) {
  const char* exe = std::getenv("EFIE_CLI");
  REQUIRE(exe != nullptr);
  const std::string cmd = std::string(exe) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("frequency specifications") {
  const auto list = parse_frequencies("1,10,2.5e3");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == 2500.0);
  const auto range = parse_frequencies("1e-2:1e6:9");
  REQUIRE(range.size() == 9);
  CHECK(range.front() == doctest::Approx(1e-2));
  CHECK(range.back() == doctest::Approx(1e6));
  for (std::size_t i = 1; i < range.size(); ++i) CHECK(range[i] / range[i - 1] == doctest::Approx(10.0));
  CHECK(parse_frequencies("5:5:1") == std::vector<double>{5.0});
  for (const char* bad : {"", "-1", "0", "abc", "1,,2", "1:2", "10:1e3:0", "1:x:3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_frequencies(bad), Error);
  }
  CHECK(parse_precond_mode("both") == PrecondMode::both);
  CHECK(std::string(to_string(PrecondMode::off)) == "off");
  CHECK_THROWS(parse_precond_mode("maybe"));
}

TEST_CASE("single-frequency sweep writes one row that parses back") {
  ExperimentConfig cfg = sphere_config(0, 1, "sweep1");
  cfg.frequencies = {1e3};
  const auto rows = sweep_frequency(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error.empty());
  std::ostringstream log;
  CHECK(cmd_sweep_frequency(cfg, log) == 0);
  const Csv csv = read_csv(cfg.out_dir / "sweep_frequency_p1.csv");
  CHECK(csv.header == std::vector<std::string>{"f_hz", "cond_plain", "cond_precond", "gmres_iters_plain",
                                               "gmres_iters_precond"});
  REQUIRE(csv.rows.size() == 1);
  const auto& r = csv.rows[0];
  CHECK(r[0] == 1e3);
  CHECK(r[1] == doctest::Approx(rows[0].cond_plain).epsilon(1e-11));
  CHECK(r[2] == doctest::Approx(rows[0].cond_precond).epsilon(1e-11));
  CHECK(r[3] == rows[0].gmres_plain);
  CHECK(r[4] == rows[0].gmres_precond);
  // At 1 kHz the plain matrix is already far worse conditioned.
  CHECK(r[1] > 1e6 * r[2]);

  std::ifstream in(cfg.out_dir / "manifest.json");
  const auto manifest = nlohmann::json::parse(in);
  CHECK(manifest["command"] == "sweep-frequency");
  CHECK(manifest["order"] == 1);
  CHECK(manifest["outputs"][0] == "sweep_frequency_p1.csv");
  CHECK(manifest.contains("versions"));
  CHECK(manifest.contains("seed"));
}

TEST_CASE("frequency sweep reproduces the k^-2 trend and flat preconditioned curve") {
  ExperimentConfig cfg = sphere_config(1, 0, "sweep_trend");
  cfg.frequencies = parse_frequencies("1e-2:1e6:5");
  cfg.gmres = false;
  const auto rows = sweep_frequency(cfg);
  std::vector<double> f, plain, pre;
  for (const auto& r : rows) {
    f.push_back(r.f_hz);
    plain.push_back(r.cond_plain);
    pre.push_back(r.cond_precond);
  }
  CHECK(loglog_slope(f, plain) == doctest::Approx(-2.0).epsilon(0.02));
  const auto [lo, hi] = std::minmax_element(pre.begin(), pre.end());
  CHECK(*hi < 1.1 * *lo);
}

TEST_CASE("mesh refinement sweep") {
  SUBCASE("single level gives one row") {
    ExperimentConfig cfg = sphere_config(0, 0, "h1");
    cfg.levels = {1};
    std::ostringstream log;
    CHECK(cmd_sweep_h(cfg, log) == 0);
    const Csv csv = read_csv(cfg.out_dir / "sweep_h_p0.csv");
    REQUIRE(csv.rows.size() == 1);
    CHECK(csv.rows[0][csv.column("level")] == 1);
    CHECK(csv.rows[0][csv.column("unknowns")] == 120);
  }
  SUBCASE("torus runs unchanged") {
    ExperimentConfig cfg = torus_config(8, 4, 1, "h_torus");
    cfg.levels = {0, 1};
    const auto rows = sweep_h(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      CHECK(r.error.empty());
      CHECK(std::isfinite(r.cond_precond));
    }
    CHECK(rows[1].h_avg < rows[0].h_avg);
    CHECK(rows[1].unknowns == 4 * rows[0].unknowns);
  }
}

TEST_CASE("rcs output columns") {
  SUBCASE("sphere carries the Mie oracle") {
    ExperimentConfig cfg = sphere_config(1, 1, "rcs_sphere");
    cfg.frequencies = {3e7};
    cfg.angles = 19;
    std::ostringstream log;
    CHECK(cmd_rcs(cfg, log) == 0);
    const Csv csv = read_csv(cfg.out_dir / "rcs_p1_f3e+07.csv");
    CHECK(csv.header ==
          std::vector<std::string>{"angle_deg", "sigma_dbsm_computed", "sigma_dbsm_mie", "sigma_dbsm_plain"});
    CHECK(csv.rows.size() == 19);
    CHECK(log.str().find("rms_precond_db") != std::string::npos);
    for (const auto& r : csv.rows) CHECK(std::abs(r[1] - r[2]) < 0.5);
  }
  SUBCASE("torus has no oracle column") {
    ExperimentConfig cfg = torus_config(8, 4, 0, "rcs_torus");
    cfg.frequencies = {1.0};
    cfg.precond = PrecondMode::on;
    cfg.angles = 7;
    std::ostringstream log;
    CHECK(cmd_rcs(cfg, log) == 0);
    const Csv csv = read_csv(cfg.out_dir / "rcs_p0_f1.csv");
    CHECK(csv.header == std::vector<std::string>{"angle_deg", "sigma_dbsm_computed"});
    CHECK(csv.rows.size() == 7);
    CHECK(log.str().find("no oracle") != std::string::npos);
  }
}

TEST_CASE("surface currents") {
  SUBCASE("zero excitation") {
    ExperimentConfig cfg = sphere_config(0, 1, "current_zero");
    cfg.amplitude = 0.0;
    const SurfaceCurrents s = compute_surface_current(cfg, 1e6);
    REQUIRE(s.dof_precond.size() == 100);
    for (double v : s.dof_precond) CHECK(v == 0.0);
    for (double v : s.dof_plain) CHECK(v == 0.0);
  }
  SUBCASE("both variants agree at moderate frequency") {
    ExperimentConfig cfg = sphere_config(1, 1, "current_consistent");
    const SurfaceCurrents s = compute_surface_current(cfg, 1e7);
    const Eigen::Map<const Eigen::VectorXd> a(s.dof_precond.data(), s.dof_precond.size()),
        b(s.dof_plain.data(), s.dof_plain.size());
    CHECK((a - b).norm() < 0.01 * b.norm());
    for (const auto& c : s.cells) CHECK(std::abs(c.precond_db - c.plain_db) < 0.1);
  }
  SUBCASE("low-frequency breakdown signature on the torus") {
    // Threshold from the first validated run: max gap 49 dB, mean 29 dB.
    ExperimentConfig cfg = torus_config(16, 8, 2, "current_torus");
    cfg.frequencies = {10.0};
    std::ostringstream log;
    CHECK(cmd_surface_current(cfg, log) == 0);
    const Csv cells = read_csv(cfg.out_dir / "current_p2_f10_cells.csv");
    REQUIRE(cells.rows.size() == 256);
    const int pre = cells.column("j_db_precond"), plain = cells.column("j_db_plain");
    double gap = 0.0, lo = 1e300, hi = -1e300;
    for (const auto& r : cells.rows) {
      REQUIRE(std::isfinite(r[pre]));
      lo = std::min(lo, r[pre]);
      hi = std::max(hi, r[pre]);
      gap = std::max(gap, std::abs(r[pre] - r[plain]));
    }
    MESSAGE("max |J| gap plain vs preconditioned: " << gap << " dB");
    CHECK(gap > 20.0);
    // Smooth preconditioned current: spread well below the breakdown gap.
    CHECK(hi - lo < 20.0);
    CHECK(read_csv(cfg.out_dir / "current_p2_f10_dofs.csv").rows.size() == 2688);
  }
}

TEST_CASE("mesh files load through the configuration") {
  const fs::path dir = scratch("mesh_file");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "tet.msh");
    write_gmsh22(test::tetrahedron_raw(), out);
  }
  ExperimentConfig cfg;
  cfg.mesh.kind = MeshSource::Kind::file;
  cfg.mesh.path = dir / "tet.msh";
  CHECK(load_mesh(cfg.mesh)->num_cells() == 4);
  cfg.mesh.path = dir / "missing.msh";
  CHECK_THROWS(load_mesh(cfg.mesh));
}

TEST_CASE("command-line binary") {
  const RunResult info = run("mesh-info --sphere 1 --order 2");
  CHECK(info.status == 0);
  CHECK(info.output.find("N_p: 840") != std::string::npos);
  CHECK(info.output.find("M_p: 480") != std::string::npos);
  CHECK(info.output.find("euler_characteristic: 2") != std::string::npos);

  const fs::path out = scratch("binary");
  const RunResult sweep = run("sweep-frequency --sphere 0 --order 0 --freq 10,1e4 --out " + out.string());
  CHECK(sweep.status == 0);
  CHECK(read_csv(out / "sweep_frequency_p0.csv").rows.size() == 2);
  CHECK(fs::exists(out / "manifest.json"));

  CHECK(run("sweep-frequency --sphere 0 --freq -1 --out " + out.string()).status == 2);
  CHECK(run("rcs --sphere 0 --precond sideways").status != 0);
  CHECK(run("").status != 0);
}
