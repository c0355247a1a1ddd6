#include "pwlham/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pwlham {

std::vector<double> CycleCertificate::flight_times() const {
  std::vector<double> out;
  for (const auto& arc : arcs) out.push_back(arc.time);
  return out;
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double cycle_period(const CycleCertificate& cert) {
  const auto times = cert.flight_times();
  return std::accumulate(times.begin(), times.end(), 0.0);
}

namespace {

struct ArcPlan {
  ZoneId zone;
  Point start;
  Point end;
};

std::vector<Point> corner_points(const CornerOrdinates& y) {
  return {{1.0, y.y0}, {1.0, y.y1}, {-1.0, y.y2}, {-1.0, y.y3}};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool fail(std::string* reason, const std::string& why) {
  if (reason) *reason = why;
  return false;
}

// Sign the x-velocity must have when an arc departs from `start` into `zone`.
double departure_sign(ZoneId zone, Point start) {
  if (zone == ZoneId::R) return 1.0;
  if (zone == ZoneId::L) return -1.0;
  return start.x > 0.0 ? -1.0 : 1.0;
}

}  // namespace

std::optional<CycleCertificate> assemble_certificate(const PiecewiseSystem& system,
                                                     const CornerOrdinates& y,
                                                     int samples_per_arc, std::string* reason) {
  if (system.layout() != Layout::ThreeZone) {
    fail(reason, "certificates are only assembled for three-zone systems");
    return std::nullopt;
  }
  if (samples_per_arc < 2) {
    fail(reason, "need at least 2 samples per arc");
    return std::nullopt;
  }

  CycleCertificate cert;
  cert.ordinates = y;
  cert.corners = corner_points(y);
  cert.samples_per_arc = samples_per_arc;
  const LineId corner_line[4] = {LineId::SigmaR, LineId::SigmaR, LineId::SigmaL, LineId::SigmaL};
  for (int k = 0; k < 4; ++k) {
    cert.crossing.push_back(classify_boundary_point(system, cert.corners[k], corner_line[k]));
    if (cert.crossing.back().label != ContactLabel::Crossing) {
      std::ostringstream msg;
      msg << "algebraic solution, not a crossing cycle: corner " << k << " is "
          << to_string(cert.crossing.back().label);
      fail(reason, msg.str());
      return std::nullopt;
    }
  }

  const auto& c = cert.corners;
  cert.clockwise = vector_field_value(system.right(), c[0]).x > 0.0;
  const std::vector<ArcPlan> plan =
      cert.clockwise
          ? std::vector<ArcPlan>{{ZoneId::R, c[0], c[1]}, {ZoneId::C, c[1], c[2]},
                                 {ZoneId::L, c[2], c[3]}, {ZoneId::C, c[3], c[0]}}
          : std::vector<ArcPlan>{{ZoneId::R, c[1], c[0]}, {ZoneId::C, c[0], c[3]},
                                 {ZoneId::L, c[3], c[2]}, {ZoneId::C, c[2], c[1]}};

  for (const ArcPlan& arc : plan) {
    const auto& field = system.field(arc.zone);
    std::ostringstream where;
    where << "arc in zone " << to_string(arc.zone) << " from (" << arc.start.x << ", "
          << arc.start.y << ")";
    if (vector_field_value(field, arc.start).x * departure_sign(arc.zone, arc.start) <= 0.0) {
      fail(reason, where.str() + " does not depart into its zone");
      return std::nullopt;
    }
    double t = 0.0;
    try {
      t = flight_time(field, arc.start, arc.end.x);
    } catch (const Error& e) {
      fail(reason, where.str() + ": " + e.what());
      return std::nullopt;
    }
    if (arc.zone == ZoneId::C) {
      // The inner strip has two exits; the arc must not come back to its departure line first.
      try {
        const double back = flight_time(field, arc.start, arc.start.x);
        if (back < t) {
          fail(reason, where.str() + " returns to its departure line before reaching the far line");
          return std::nullopt;
        }
      } catch (const Error&) {
      }
    }
    const Point arrival = flow_closed_form(field, arc.start, t);
    if (std::abs(arrival.y - arc.end.y) > kClosureTol * (1.0 + std::abs(arc.end.y))) {
      std::ostringstream msg;
      msg << where.str() << " arrives at y = " << arrival.y << " instead of " << arc.end.y;
      fail(reason, msg.str());
      return std::nullopt;
    }
    cert.arcs.push_back({arc.zone, arc.start, arc.end, t});
  }

  for (std::size_t k = 0; k < cert.arcs.size(); ++k) {
    const auto& arc = cert.arcs[k];
    auto pts = orbit_samples(system.field(arc.zone), arc.start, arc.time, samples_per_arc);
    cert.polyline.insert(cert.polyline.end(), pts.begin() + (k == 0 ? 0 : 1), pts.end());
  }
  cert.residual_norm = max_abs(residuals_three_zone(system, y));
  cert.period = cycle_period(cert);
  return cert;
}

CycleSearch find_limit_cycle(const PiecewiseSystem& system, int samples_per_arc) {
  CycleSearch out{std::nullopt, solve(system), {}};
  const auto* candidate = std::get_if<UniqueCycleCandidate>(&out.outcome);
  if (!candidate) {
    out.diagnostic = std::string("no limit cycle: ") + outcome_name(out.outcome) + " (" +
                     outcome_branch(out.outcome) + ")";
    return out;
  }
  std::string reason;
  auto cert = assemble_certificate(system, candidate->y, samples_per_arc, &reason);
  if (!cert) {
    out.diagnostic = "candidate is not a realized crossing cycle: " + reason;
    return out;
  }
  if (cert->residual_norm > kResidualTol) {
    std::ostringstream msg;
    msg << "candidate residual " << cert->residual_norm << " exceeds " << kResidualTol;
    out.diagnostic = msg.str();
    return out;
  }
  out.certificate = std::move(cert);
  return out;
}

VerificationReport verify_certificate(const CycleCertificate& cert, const PiecewiseSystem& system) {
  VerificationReport report;
  auto add = [&](std::string name, bool ok, double measured, double threshold) {
    report.checks.push_back({std::move(name), ok, measured, threshold});
  };

  if (system.layout() != Layout::ThreeZone) {
    add("three_zone_layout", false, 0.0, 0.0);
    return report;
  }

  const double residual = max_abs(residuals_three_zone(system, cert.ordinates));
  add("residual_norm", residual <= kResidualTol, residual, kResidualTol);

  const auto expected = corner_points(cert.ordinates);
  double corner_gap = cert.corners.size() == 4 ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < cert.corners.size() && k < 4; ++k) {
    corner_gap = std::max(corner_gap, norm(cert.corners[k] - expected[k]));
  }
  add("corners_match_ordinates", corner_gap <= 1e-12, corner_gap, 1e-12);

  const LineId corner_line[4] = {LineId::SigmaR, LineId::SigmaR, LineId::SigmaL, LineId::SigmaL};
  for (int k = 0; k < 4; ++k) {
    const auto cls = classify_boundary_point(system, expected[k], corner_line[k]);
    add("corner_" + std::to_string(k) + "_crossing", cls.label == ContactLabel::Crossing,
        cls.product, 0.0);
  }

  if (cert.arcs.size() != 4) add("four_arcs", false, static_cast<double>(cert.arcs.size()), 4.0);
  double chain_gap = 0.0;
  for (std::size_t k = 0; k < cert.arcs.size(); ++k) {
    const auto& arc = cert.arcs[k];
    const std::string tag = "arc_" + std::to_string(k);
    add(tag + "_time_positive", arc.time > 0.0, arc.time, 0.0);
    const Point arrival = flow_closed_form(system.field(arc.zone), arc.start, arc.time);
    const double miss = norm(arrival - arc.end);
    add(tag + "_lands_on_next_corner", miss <= kClosureTol, miss, kClosureTol);
    const auto& next = cert.arcs[(k + 1) % cert.arcs.size()];
    chain_gap = std::max(chain_gap, norm(arc.end - next.start));
  }
  add("arcs_chain", chain_gap <= 1e-12, chain_gap, 1e-12);

  const double closure =
      cert.polyline.size() >= 2 ? norm(cert.polyline.front() - cert.polyline.back()) : INFINITY;
  add("polyline_closed", closure <= kClosureTol, closure, kClosureTol);

  const double period_gap = std::abs(cert.period - cycle_period(cert));
  add("period_is_sum_of_times", period_gap <= 1e-12 * (1.0 + cert.period), period_gap,
      1e-12 * (1.0 + cert.period));
  return report;
}

}  // namespace pwlham
