#pragma once

#include <filesystem>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "efie/basis.hpp"
#include "efie/quadrature.hpp"

namespace efie {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kMu0 = 1.25663706212e-6;
inline constexpr double kEta0 = kMu0 * kSpeedOfLight;

inline double wavenumber(double frequency_hz) { return 2.0 * std::numbers::pi * frequency_hz / kSpeedOfLight; }

enum class KernelPart { full, static_part, dynamic_part };

// T_s and T_h of T = jk T_s + T_h / (jk). Both symmetric (non-conjugate).
struct EfieBlocks {
  CMatrix Ts;
  CMatrix Th;
  double k = 0.0;
};

// Entries (m, n) = integral of G psi_n . psi_m and G div psi_n div psi_m. k = 0
// gives the static kernel.
EfieBlocks assemble_blocks(const BasisSpace& space, double k, const QuadratureConfig& cfg,
                           KernelPart part = KernelPart::full);
CMatrix assemble_Ts(const BasisSpace& space, double k, const QuadratureConfig& cfg,
                    KernelPart part = KernelPart::full);
CMatrix assemble_Th(const BasisSpace& space, double k, const QuadratureConfig& cfg,
                    KernelPart part = KernelPart::full);

// jk T_s + T_h / (jk); requires k > 0.
CMatrix efie_matrix(const EfieBlocks& blocks);

struct PlaneWave {
  Vec3 direction{0.0, 0.0, 1.0};
  Vec3 polarization{1.0, 0.0, 0.0};
  double amplitude = 1.0;  // V/m
  double frequency = 0.0;  // Hz

  double k() const { return wavenumber(frequency); }
  // Throws Error unless both vectors are unit and orthogonal.
  void validate() const;
};

struct Excitation {
  CVector e;
  CVector e_sub;
};

// Triangle-rule degree used for excitation and radiation integrals.
inline constexpr int kSourceDegree = 10;

// [e]_m = -(1/eta) integral E^i . psi_m. The subtracted variant replaces the
// phase factor e^{-jk khat.r} by e^{-jk khat.r} - 1.
CVector assemble_excitation(const BasisSpace& space, const PlaneWave& wave, bool subtracted,
                            int degree = kSourceDegree);
Excitation assemble_excitations(const BasisSpace& space, const PlaneWave& wave, int degree = kSourceDegree);
// -(1/eta) integral amplitude * polarization . psi_m; equals e - e_sub.
CVector static_test_vector(const BasisSpace& space, const PlaneWave& wave, int degree = kSourceDegree);

// Far-field amplitude F with E_s ~ F e^{-jkr} / r, for currents given as
// coefficient vectors of the system T j = e. The solenoidal part radiates
// through the phase factor e^{jk rhat.r} - 1.
std::vector<Eigen::Vector3cd> far_field(const BasisSpace& space, const CVector& j_sol, const CVector& j_nsol,
                                        double k, const std::vector<Vec3>& directions,
                                        int degree = kSourceDegree);

// Bistatic RCS 4 pi |F|^2 / |E0|^2 in m^2.
std::vector<double> rcs(const std::vector<Eigen::Vector3cd>& field, double amplitude);
double to_dbsm(double sigma);

// Observation directions (sin t, 0, cos t) on the phi = 0 cut for the given
// angles in degrees.
std::vector<Vec3> phi0_cut(const std::vector<double>& theta_deg);

// Binary layout: 8-byte magic "EFIEMAT1", uint64 rows, uint64 cols, then rows*cols
// (re, im) float32 pairs in row-major order. Little-endian.
void write_matrix_binary(const CMatrix& m, const std::filesystem::path& path);
CMatrix read_matrix_binary(const std::filesystem::path& path);
// "row,col,re,im" lines after a header; intended for small cases.
void write_matrix_csv(const CMatrix& m, const std::filesystem::path& path);

}  // namespace efie
