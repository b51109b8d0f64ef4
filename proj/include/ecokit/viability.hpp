#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ecokit/common.hpp"

namespace ecokit {

/// Averaged n-consumers / m-providers profile: every consumer contributes
/// the average net benefit v_c_bar - t_c_bar - i_c_bar, every provider the
/// average cost t_p_bar.
struct AverageProfile {
  long long n = 0;  ///< consumer count
  long long m = 0;  ///< provider count
  double v_c_bar = 0.0;
  double t_c_bar = 0.0;
  double i_c_bar = 0.0;
  double t_p_bar = 0.0;
};

struct FeasibilityMargin {
  double margin = 0.0;
  bool feasible = false;
};

/// Generic averaged feasibility inequality:
/// margin = n*(v_c_bar - t_c_bar - i_c_bar) - m*t_p_bar.
FeasibilityMargin general_feasibility(const AverageProfile& p,
                                      double eps = kFeasibilityEps);

/// The averages alone, for sweeping the whole (n, m) plane.
struct RegionAverages {
  double v_c_bar = 0.0;
  double t_c_bar = 0.0;
  double i_c_bar = 0.0;
  double t_p_bar = 0.0;
};

struct RegionCell {
  long long n = 0;
  long long m = 0;
  double margin = 0.0;
  bool feasible = false;
};

/// Integer grid over the viability plane plus the boundary line separating
/// the feasible and infeasible regions (m = slope * n, through the origin).
struct ViabilityRegion {
  std::vector<RegionCell> cells;  ///< sorted by (n, m)
  double boundary_slope = 0.0;    ///< +inf when t_p_bar == 0
  double boundary_intercept = 0.0;
  bool slope_finite = true;
};

/// Evaluates every integer cell (n, m) in [0, n_max] x [0, m_max].
/// For each n the feasible m-set is a prefix {0, ..., k}.
ViabilityRegion viability_region(const RegionAverages& avg, long long n_max,
                                 long long m_max, double eps = kFeasibilityEps);

/// Emits the region as CSV: header n,m,margin,feasible; rows sorted by n
/// then m; margins with 9 significant digits; feasible as true/false.
void write_region_csv(std::ostream& out, const ViabilityRegion& region);

enum class Preference { ecosystem, standard };

/// A consumer prefers the ecosystem channel iff it strictly lowers its
/// transaction cost; values and fees cancel out of the comparison.
Preference consumer_engagement(double t_c_eco, double t_c_std,
                               double eps = kFeasibilityEps);

enum class EngagementCase { a, b, c, d };

/// Provider-side channel comparison. The table case comes from the sign
/// pattern of delta_v = v_p_eco - v_p_std against delta_t = t_p_eco -
/// t_p_std; when either delta sits within eps of zero the pattern is
/// undecidable and the result is flagged ambiguous instead of binned.
struct ProviderEngagement {
  std::optional<EngagementCase> table_case;  ///< absent when ambiguous
  bool ambiguous = false;
  bool prefers_ecosystem = false;  ///< delta_v > delta_t
  double delta_v = 0.0;
  double delta_t = 0.0;
};

ProviderEngagement provider_engagement(double v_p_eco, double v_p_std,
                                       double t_p_eco, double t_p_std,
                                       double eps = kFeasibilityEps);

}  // namespace ecokit
