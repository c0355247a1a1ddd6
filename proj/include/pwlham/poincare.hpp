#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "pwlham/flow.hpp"

namespace pwlham {

// Numerical return-map oracle. Integrates the piecewise field with classical
// RK4, localizes every switching-line crossing by bisection on the step
// fraction, and never consults the closed-form flows or the closure solver.

struct TrajectoryEvent {
  double time;
  Point point;
  LineId line;
  CrossingClassification classification;
};

struct Trajectory {
  std::vector<FlowState> states;
  std::vector<TrajectoryEvent> events;
};

struct OracleOptions {
  double tol = 1e-9;
  double t_max = 100.0;
};

using EventPredicate = std::function<bool(const TrajectoryEvent&)>;

/// Step size is tol^(1/4) divided by the fastest zone rate, so the RK4 global
/// error scales like tol. Throws SlidingEncountered at a non-crossing contact
/// and StepUnderflow if event localization stalls. Integration ends at t_max
/// or right after an event for which `stop` returns true.
Trajectory integrate_numeric(const PiecewiseSystem& system, Point x0, double t_max, double tol,
                             const EventPredicate& stop = {});

/// Abscissa of the section used by the return map: x = 1 (three zones) or x = 0 (two zones).
double section_abscissa(const PiecewiseSystem& system);

struct ReturnResult {
  double y;
  double time;
};

/// First return to the section with rightward crossing, starting at (s, y).
/// Throws InvalidInput if (s, y) is not a crossing point into the right zone,
/// NoReturn if nothing comes back before t_max.
ReturnResult return_map_with_time(const PiecewiseSystem& system, double y,
                                  const OracleOptions& options = {});

/// fixed_point on [y - d, y + d], d = 1e-2 (1 + |y|), shrinking d by 4 (up to 12 times)
/// while the bracket is rejected: unstable cycles can send nearby orbits into sliding.
double fixed_point_near(const PiecewiseSystem& system, double y_guess,
                        const OracleOptions& options = {});
double return_map(const PiecewiseSystem& system, double y, const OracleOptions& options = {});

/// Bisection to width 1e-10 on a displacement function with a sign change.
/// Throws BadBracket otherwise.
double bisect_sign_change(const std::function<double(double)>& displacement, double lo,
                          double hi, double width = 1e-10);

/// Zero of d(y) = return_map(y) - y inside [y_lo, y_hi].
double fixed_point(const PiecewiseSystem& system, double y_lo, double y_hi,
                   const OracleOptions& options = {});

/// Header `t,x,y,zone`, one row per state.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace pwlham
