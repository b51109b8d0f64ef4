#include "ecokit/viability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace ecokit {

namespace {

double cell_margin(const RegionAverages& avg, long long n, long long m) {
  return static_cast<double>(n) * (avg.v_c_bar - avg.t_c_bar - avg.i_c_bar) -
         static_cast<double>(m) * avg.t_p_bar;
}

}  // namespace

FeasibilityMargin general_feasibility(const AverageProfile& p, double eps) {
  const double margin =
      cell_margin({p.v_c_bar, p.t_c_bar, p.i_c_bar, p.t_p_bar}, p.n, p.m);
  return {margin, margin > eps};
}

ViabilityRegion viability_region(const RegionAverages& avg, long long n_max,
                                 long long m_max, double eps) {
  if (n_max < 1 || m_max < 1) {
    throw std::invalid_argument("viability region needs n_max, m_max >= 1");
  }
  ViabilityRegion region;
  region.cells.reserve(static_cast<std::size_t>((n_max + 1) * (m_max + 1)));
  for (long long n = 0; n <= n_max; ++n) {
    for (long long m = 0; m <= m_max; ++m) {
      const double margin = cell_margin(avg, n, m);
      region.cells.push_back({n, m, margin, margin > eps});
    }
  }
  if (avg.t_p_bar > 0.0) {
    region.boundary_slope = (avg.v_c_bar - avg.t_c_bar - avg.i_c_bar) /
                            avg.t_p_bar;
    region.slope_finite = true;
  } else {
    region.boundary_slope = std::numeric_limits<double>::infinity();
    region.slope_finite = false;
  }
  region.boundary_intercept = 0.0;
  return region;
}

void write_region_csv(std::ostream& out, const ViabilityRegion& region) {
  out << "n,m,margin,feasible\n";
  char buf[40];
  for (const RegionCell& cell : region.cells) {
    std::snprintf(buf, sizeof(buf), "%.9g", cell.margin);
    out << cell.n << ',' << cell.m << ',' << buf << ','
        << (cell.feasible ? "true" : "false") << '\n';
  }
}

Preference consumer_engagement(double t_c_eco, double t_c_std, double eps) {
  return t_c_eco < t_c_std - eps ? Preference::ecosystem : Preference::standard;
}

ProviderEngagement provider_engagement(double v_p_eco, double v_p_std,
                                       double t_p_eco, double t_p_std,
                                       double eps) {
  ProviderEngagement result;
  result.delta_v = v_p_eco - v_p_std;
  result.delta_t = t_p_eco - t_p_std;
  result.prefers_ecosystem = result.delta_v > result.delta_t + eps;

  const bool dv_zero = std::abs(result.delta_v) <= eps;
  const bool dt_zero = std::abs(result.delta_t) <= eps;
  if (dv_zero || dt_zero) {
    result.ambiguous = true;
    return result;
  }
  if (result.delta_v > 0.0) {
    result.table_case =
        result.delta_t < 0.0 ? EngagementCase::a : EngagementCase::b;
  } else {
    result.table_case =
        result.delta_t < 0.0 ? EngagementCase::c : EngagementCase::d;
  }
  return result;
}

}  // namespace ecokit
