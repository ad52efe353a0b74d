#include <algorithm>
#include <cmath>
#include <numbers>

#include "efie/analysis.hpp"
#include "efie/errors.hpp"

namespace efie {

namespace {

using cd = std::complex<double>;

// Riccati-Bessel psi_n = x j_n and xi_n = x h_n^(1), with derivatives from
// z_n' = z_{n-1} - n z_n / x applied to x z_n.
struct Riccati {
  double psi, dpsi;
  cd xi, dxi;
};

Riccati riccati(int n, double x) {
  const double jn = std::sph_bessel(n, x), jm = std::sph_bessel(n - 1, x);
  const double yn = std::sph_neumann(n, x), ym = std::sph_neumann(n - 1, x);
  const cd hn(jn, yn), hm(jm, ym);
  return {x * jn, x * jm - n * jn, x * hn, x * hm - double(n) * hn};
}

}  // namespace

MieSeries::MieSeries(double radius, double k, int terms) : radius_(radius), k_(k) {
  if (!(radius > 0.0) || !(k > 0.0)) throw Error("Mie series requires positive radius and wavenumber");
  const double x = k * radius;
  if (terms <= 0) terms = static_cast<int>(std::ceil(x + 4.0 * std::cbrt(x) + 10.0));
  for (int n = 1; n <= terms; ++n) {
    const Riccati r = riccati(n, x);
    a_.push_back(r.dpsi / r.dxi);
    b_.push_back(r.psi / r.xi);
    if (!std::isfinite(std::abs(a_.back())) || !std::isfinite(std::abs(b_.back())))
      throw Error("Mie coefficients overflow at order " + std::to_string(n));
  }
}

std::complex<double> MieSeries::s1(double theta) const {
  const double mu = std::cos(theta);
  double pi_prev = 0.0, pi_cur = 1.0;
  cd s = 0.0;
  for (int n = 1; n <= terms(); ++n) {
    const double tau = n * mu * pi_cur - (n + 1) * pi_prev;
    s += (2.0 * n + 1.0) / (n * (n + 1.0)) * (a_[n - 1] * pi_cur + b_[n - 1] * tau);
    const double next = ((2.0 * n + 1.0) * mu * pi_cur - (n + 1.0) * pi_prev) / n;
    pi_prev = pi_cur;
    pi_cur = next;
  }
  return s;
}

std::complex<double> MieSeries::s2(double theta) const {
  const double mu = std::cos(theta);
  double pi_prev = 0.0, pi_cur = 1.0;
  cd s = 0.0;
  for (int n = 1; n <= terms(); ++n) {
    const double tau = n * mu * pi_cur - (n + 1) * pi_prev;
    s += (2.0 * n + 1.0) / (n * (n + 1.0)) * (a_[n - 1] * tau + b_[n - 1] * pi_cur);
    const double next = ((2.0 * n + 1.0) * mu * pi_cur - (n + 1.0) * pi_prev) / n;
    pi_prev = pi_cur;
    pi_cur = next;
  }
  return s;
}

double MieSeries::rcs_e_plane(double theta) const { return 4.0 * std::numbers::pi * std::norm(s2(theta)) / (k_ * k_); }

double MieSeries::rcs_h_plane(double theta) const { return 4.0 * std::numbers::pi * std::norm(s1(theta)) / (k_ * k_); }

double MieSeries::extinction_cross_section() const {
  return 4.0 * std::numbers::pi / (k_ * k_) * s1(0.0).real();
}

double MieSeries::scattering_cross_section() const {
  double sum = 0.0;
  for (int n = 1; n <= terms(); ++n) sum += (2.0 * n + 1.0) * (std::norm(a_[n - 1]) + std::norm(b_[n - 1]));
  return 2.0 * std::numbers::pi / (k_ * k_) * sum;
}

std::vector<double> mie_rcs(double radius, double frequency_hz, const std::vector<double>& theta_deg, MieCut cut) {
  if (!(frequency_hz > 0.0)) throw Error("Mie series requires a positive frequency");
  const double k = wavenumber(frequency_hz);
  const MieSeries base(radius, k);
  const MieSeries check(radius, k, base.terms() + 5);
  std::vector<double> out, ref;
  for (double t : theta_deg) {
    const double th = t * std::numbers::pi / 180.0;
    out.push_back(cut == MieCut::e_plane ? base.rcs_e_plane(th) : base.rcs_h_plane(th));
    ref.push_back(cut == MieCut::e_plane ? check.rcs_e_plane(th) : check.rcs_h_plane(th));
  }
  const double scale = out.empty() ? 0.0 : *std::max_element(ref.begin(), ref.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (std::abs(out[i] - ref[i]) > 1e-10 * std::max(std::abs(ref[i]), 1e-300) &&
        std::abs(out[i] - ref[i]) > 1e-10 * scale)
      throw Error("Mie series not converged with " + std::to_string(base.terms()) + " terms; increase truncation");
  return out;
}

}  // namespace efie
