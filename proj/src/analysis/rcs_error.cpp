#include <algorithm>
#include <cmath>

#include "efie/analysis.hpp"
#include "efie/errors.hpp"

namespace efie {

double rcs_error(const std::vector<double>& computed_dbsm, const std::vector<double>& oracle_dbsm,
                 double null_depth_db) {
  if (computed_dbsm.size() != oracle_dbsm.size() || oracle_dbsm.empty())
    throw Error("rcs_error: curves are not sampled on the same angle grid");
  const double top = *std::max_element(oracle_dbsm.begin(), oracle_dbsm.end());
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < oracle_dbsm.size(); ++i) {
    if (oracle_dbsm[i] < top - null_depth_db) continue;
    const double d = computed_dbsm[i] - oracle_dbsm[i];
    sum += d * d;
    ++count;
  }
  return count > 0 ? std::sqrt(sum / count) : 0.0;
}

double rcs_max_deviation(const std::vector<double>& computed_dbsm, const std::vector<double>& oracle_dbsm) {
  if (computed_dbsm.size() != oracle_dbsm.size()) throw Error("rcs_max_deviation: grid mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < oracle_dbsm.size(); ++i)
    worst = std::max(worst, std::abs(computed_dbsm[i] - oracle_dbsm[i]));
  return worst;
}

std::vector<double> peak_normalized(const std::vector<double>& dbsm) {
  if (dbsm.empty()) return {};
  const double top = *std::max_element(dbsm.begin(), dbsm.end());
  std::vector<double> out(dbsm);
  for (double& v : out) v -= top;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("loglog_slope needs at least two matching points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log10(x[i]) / n;
    my += std::log10(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log10(x[i]) - mx;
    sxy += dx * (std::log10(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace efie
