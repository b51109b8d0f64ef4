#pragma once

namespace ecokit {

/// Default strictness tolerance for every "margin > 0" style feasibility
/// test, in common utility units. Margins within [−eps, +eps] of zero are
/// treated as infeasible; callers can pass their own eps to any operation
/// that takes one.
inline constexpr double kFeasibilityEps = 1e-9;

}  // namespace ecokit
