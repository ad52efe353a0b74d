#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "efie/operators.hpp"
#include "efie/projectors.hpp"

namespace efie {

// Plane-wave scattering by a PEC sphere of radius a: incidence along +z with
// x polarization. Angles are measured from +z; the E-plane is phi = 0.
class MieSeries {
 public:
  // terms = 0 selects ceil(ka + 4 (ka)^{1/3} + 10).
  MieSeries(double radius, double k, int terms = 0);

  int terms() const { return static_cast<int>(a_.size()); }
  double ka() const { return k_ * radius_; }
  std::complex<double> s1(double theta) const;
  std::complex<double> s2(double theta) const;
  // Bistatic RCS in m^2 on the E-plane (phi = 0) and H-plane (phi = 90 deg).
  double rcs_e_plane(double theta) const;
  double rcs_h_plane(double theta) const;
  double backscatter() const { return rcs_e_plane(std::numbers::pi); }
  // Extinction from the forward amplitude and total scattering cross-section.
  double extinction_cross_section() const;
  double scattering_cross_section() const;

 private:
  double radius_;
  double k_;
  std::vector<std::complex<double>> a_, b_;
};

enum class MieCut { e_plane, h_plane };

// Bistatic RCS (m^2) at the given angles in degrees. The truncation is
// certified by recomputing with 5 more terms; a relative change above 1e-10
// throws Error.
std::vector<double> mie_rcs(double radius, double frequency_hz, const std::vector<double>& theta_deg,
                            MieCut cut = MieCut::e_plane);

// Ratio of extreme singular values by full SVD. Throws Error above dense_limit.
inline constexpr Eigen::Index kDenseLimit = 4000;
double condition_number(const CMatrix& a, Eigen::Index dense_limit = kDenseLimit);
double condition_number(const Eigen::MatrixXd& a, Eigen::Index dense_limit = kDenseLimit);

// Orthonormal split of the coefficient space from the SVD of Sigma: the first
// n_nsol columns span range(Sigma), the rest span its left null space.
struct HelmholtzSplit {
  Eigen::MatrixXd q;
  int n_nsol = 0;
};
HelmholtzSplit helmholtz_split(const StarMatrix& star);

// cond(jk Ts + Th/(jk)) evaluated in the split basis with the solenoidal rows
// and columns of Th set to exactly zero, so the result does not lose digits as
// k -> 0.
double split_condition_number(const EfieBlocks& blocks, const HelmholtzSplit& split);

// RMS of dBsm differences, ignoring angles where the oracle lies more than
// null_depth_db below its maximum. Throws Error on size mismatch.
double rcs_error(const std::vector<double>& computed_dbsm, const std::vector<double>& oracle_dbsm,
                 double null_depth_db = 60.0);
// Maximum absolute dBsm difference.
double rcs_max_deviation(const std::vector<double>& computed_dbsm, const std::vector<double>& oracle_dbsm);
// Curve shifted so that its maximum is 0 dB.
std::vector<double> peak_normalized(const std::vector<double>& dbsm);

// Least-squares slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace efie
