#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwlham/closure.hpp"
#include "pwlham/flow.hpp"

namespace pwlham {

inline constexpr int kDefaultSamplesPerArc = 256;
inline constexpr double kResidualTol = 1e-9;
inline constexpr double kClosureTol = 1e-8;

/// One zone arc of a crossing cycle, from one corner to the next.
struct CycleArc {
  ZoneId zone;
  Point start;
  Point end;
  double time;
};

/// A verified crossing limit cycle of a three-zone system.
///
/// Corners are stored in ordinate order (1, y0), (1, y1), (-1, y2), (-1, y3);
/// arcs are stored in traversal order. For the clockwise orientation the
/// traversal is R from (1, y0) to (1, y1), C to (-1, y2), L to (-1, y3) and C
/// back to (1, y0); flight times are then (t_R, t_C1, t_L, t_C2).
struct CycleCertificate {
  CornerOrdinates ordinates;
  std::vector<Point> corners;
  std::vector<CrossingClassification> crossing;
  std::vector<CycleArc> arcs;
  bool clockwise = true;
  double residual_norm = 0.0;
  double period = 0.0;
  int samples_per_arc = kDefaultSamplesPerArc;
  std::vector<Point> polyline;

  std::vector<double> flight_times() const;
};

struct CycleSearch {
  std::optional<CycleCertificate> certificate;
  ClosureOutcome outcome;
  /// Why no certificate was produced; empty on success.
  std::string diagnostic;
};

CycleSearch find_limit_cycle(const PiecewiseSystem& system,
                             int samples_per_arc = kDefaultSamplesPerArc);

/// Rebuilds a certificate from ordinates alone (arcs, times, crossings,
/// polyline), without consulting the closure solver. Returns nullopt with a
/// reason when some arc cannot be realized.
std::optional<CycleCertificate> assemble_certificate(const PiecewiseSystem& system,
                                                     const CornerOrdinates& y,
                                                     int samples_per_arc,
                                                     std::string* reason = nullptr);

struct CheckResult {
  std::string name;
  bool passed;
  double measured;
  double threshold;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerificationReport verify_certificate(const CycleCertificate& cert, const PiecewiseSystem& system);

double cycle_period(const CycleCertificate& cert);

}  // namespace pwlham
