#include "pwlham/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace pwlham {

namespace {

Point rk4_step(const LinearHamiltonianField& f, Point p, double h) {
  const Vec2 k1 = vector_field_value(f, p);
  const Vec2 k2 = vector_field_value(f, p + (0.5 * h) * k1);
  const Vec2 k3 = vector_field_value(f, p + (0.5 * h) * k2);
  const Vec2 k4 = vector_field_value(f, p + h * k3);
  return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double fastest_rate(const PiecewiseSystem& system) {
  double rate = 0.0;
  for (const auto& f : system.fields()) rate = std::max(rate, std::sqrt(std::abs(f.discriminant())));
  return rate;
}

std::optional<LineId> line_at(const PiecewiseSystem& system, double x) {
  for (LineId line : system.lines()) {
    if (x == abscissa(line)) return line;
  }
  return std::nullopt;
}

[[noreturn]] void not_crossing(const TrajectoryEvent& ev) {
  std::ostringstream msg;
  msg << "trajectory meets " << to_string(ev.line) << " at (" << ev.point.x << ", " << ev.point.y
      << "), t = " << ev.time << ", in a " << to_string(ev.classification.label) << " point";
  throw Error(ErrorKind::SlidingEncountered, msg.str());
}

// Zone entered when leaving `line` with x-velocity sign `direction`.
ZoneId zone_after(const PiecewiseSystem& system, LineId line, double direction) {
  return direction > 0.0 ? system.zone_right_of(line) : system.zone_left_of(line);
}

}  // namespace

Trajectory integrate_numeric(const PiecewiseSystem& system, Point x0, double t_max, double tol,
                             const EventPredicate& stop) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "integration tolerance must be positive");
  const double h_nominal = std::pow(tol, 0.25) / std::max(fastest_rate(system), 1e-3);

  Trajectory traj;
  Point p = x0;
  double t = 0.0;
  ZoneId zone = system.zone_containing(p.x);
  if (const auto line = line_at(system, p.x)) {
    const auto cls = classify_boundary_point(system, p, *line);
    TrajectoryEvent ev{0.0, p, *line, cls};
    if (cls.label != ContactLabel::Crossing) not_crossing(ev);
    zone = zone_after(system, *line, cls.right);
  }
  traj.states.push_back({p, t, zone});

  while (t < t_max) {
    const auto& field = system.field(zone);
    const auto [lo, hi] = system.strip(zone);
    const double h = std::min(h_nominal, t_max - t);
    Point next = rk4_step(field, p, h);
    if (next.x > lo && next.x < hi) {
      p = next;
      t += h;
      traj.states.push_back({p, t, zone});
      continue;
    }
    // Crossed a switching line within this step: halve the step fraction until the line is hit.
    const double s = next.x >= hi ? hi : lo;
    const double side = s == hi ? 1.0 : -1.0;  // outside means (x - s) * side >= 0
    double frac_in = 0.0;
    double frac_out = 1.0;
    Point hit = next;
    int iterations = 0;
    while (true) {
      const double mid = 0.5 * (frac_in + frac_out);
      const Point q = rk4_step(field, p, mid * h);
      if (std::abs(q.x - s) <= 1e-12) {
        hit = q;
        frac_out = mid;
        break;
      }
      if ((q.x - s) * side > 0.0) {
        frac_out = mid;
      } else {
        frac_in = mid;
      }
      if (++iterations > 200 || frac_out - frac_in < 1e-17) {
        if (std::abs(q.x - s) > 1e-9) {
          throw Error(ErrorKind::StepUnderflow, "event localization did not converge");
        }
        hit = q;
        frac_out = mid;
        break;
      }
    }
    hit.x = s;
    t += frac_out * h;
    p = hit;

    const LineId line = *line_at(system, s);
    TrajectoryEvent ev{t, p, line, classify_boundary_point(system, p, line)};
    traj.events.push_back(ev);
    if (ev.classification.label != ContactLabel::Crossing) not_crossing(ev);
    zone = zone_after(system, line, side);
    traj.states.push_back({p, t, zone});
    if (stop && stop(ev)) break;
  }
  return traj;
}

double section_abscissa(const PiecewiseSystem& system) {
  return system.layout() == Layout::TwoZone ? 0.0 : 1.0;
}

ReturnResult return_map_with_time(const PiecewiseSystem& system, double y,
                                  const OracleOptions& options) {
  const double s = section_abscissa(system);
  const LineId section = system.layout() == Layout::TwoZone ? LineId::SigmaC : LineId::SigmaR;
  const auto start = classify_boundary_point(system, {s, y}, section);
  if (start.label != ContactLabel::Crossing || start.right <= 0.0) {
    std::ostringstream msg;
    msg << "(" << s << ", " << y << ") is not a crossing point into the right zone";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  bool returned = false;
  const auto traj = integrate_numeric(system, {s, y}, options.t_max, options.tol,
                                      [&](const TrajectoryEvent& ev) {
                                        returned = ev.line == section && ev.classification.right > 0.0;
                                        return returned;
                                      });
  if (!returned) {
    std::ostringstream msg;
    msg << "no return to the section within t_max = " << options.t_max;
    throw Error(ErrorKind::NoReturn, msg.str());
  }
  const auto& last = traj.events.back();
  return {last.point.y, last.time};
}

double return_map(const PiecewiseSystem& system, double y, const OracleOptions& options) {
  return return_map_with_time(system, y, options).y;
}

double bisect_sign_change(const std::function<double(double)>& displacement, double lo, double hi,
                          double width) {
  double d_lo = displacement(lo);
  const double d_hi = displacement(hi);
  if (d_lo == 0.0) return lo;
  if (d_hi == 0.0) return hi;
  if ((d_lo > 0.0) == (d_hi > 0.0)) {
    std::ostringstream msg;
    msg << "displacement has the same sign at both ends of [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::BadBracket, msg.str());
  }
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const double d_mid = displacement(mid);
    if (d_mid == 0.0) return mid;
    if ((d_mid > 0.0) == (d_lo > 0.0)) {
      lo = mid;
      d_lo = d_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double fixed_point(const PiecewiseSystem& system, double y_lo, double y_hi,
                   const OracleOptions& options) {
  return bisect_sign_change(
      [&](double y) { return return_map(system, y, options) - y; }, y_lo, y_hi);
}

double fixed_point_near(const PiecewiseSystem& system, double y_guess, const OracleOptions& options) {
  double delta = 1e-2 * (1.0 + std::abs(y_guess));
  std::string last_error;
  for (int attempt = 0; attempt < 12; ++attempt, delta *= 0.25) {
    try {
      return fixed_point(system, y_guess - delta, y_guess + delta, options);
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorKind::BadBracket, "no bracketed fixed point near y = " + std::to_string(y_guess) +
                                         ": " + last_error);
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,x,y,zone\n";
  char buf[128];
  for (const auto& s : trajectory.states) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s\n", s.time, s.point.x, s.point.y,
                  to_string(s.zone));
    out << buf;
  }
}

}  // namespace pwlham
