#include "pwlham/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace pwlham {

const char* to_string(ContactLabel label) {
  switch (label) {
    case ContactLabel::Crossing: return "crossing";
    case ContactLabel::Sliding: return "sliding";
    case ContactLabel::Escaping: return "escaping";
    case ContactLabel::Tangency: return "tangency";
  }
  return "?";
}

Matrix2 propagator(const LinearHamiltonianField& f, double t) {
  const double disc = f.discriminant();
  double even = 0.0;  // cos(w t) or cosh(l t)
  double odd = 0.0;   // sin(w t)/w or sinh(l t)/l
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    even = std::cos(w * t);
    odd = std::sin(w * t) / w;
  } else {
    const double l = std::sqrt(disc);
    even = std::cosh(l * t);
    odd = std::sinh(l * t) / l;
  }
  return {even + odd * f.a(), odd * f.b(), odd * f.c(), even - odd * f.a()};
}

Point flow_closed_form(const LinearHamiltonianField& f, Point x0, double t) {
  const Point center = classify_singularity(f).location;
  return center + propagator(f, t) * (x0 - center);
}

CrossingClassification classify_boundary_point(const PiecewiseSystem& system, Point p,
                                               LineId line) {
  const double s = abscissa(line);
  if (std::abs(p.x - s) > 1e-10 * (1.0 + std::abs(s))) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") is not on " << to_string(line);
    throw Error(ErrorKind::NotOnSwitchingLine, msg.str());
  }
  const Point on_line{s, p.y};
  const double left = vector_field_value(system.field(system.zone_left_of(line)), on_line).x;
  const double right = vector_field_value(system.field(system.zone_right_of(line)), on_line).x;
  CrossingClassification out{ContactLabel::Tangency, left, right, left * right};
  if (std::abs(left) <= kTangencyTol || std::abs(right) <= kTangencyTol) return out;
  if (left * right > 0.0) {
    out.label = ContactLabel::Crossing;
  } else if (left > 0.0) {
    out.label = ContactLabel::Sliding;
  } else {
    out.label = ContactLabel::Escaping;
  }
  return out;
}

namespace {

[[noreturn]] void never_reaches(Point x0, double target) {
  std::ostringstream msg;
  msg << "flow from (" << x0.x << ", " << x0.y << ") never reaches x = " << target;
  throw Error(ErrorKind::NeverReaches, msg.str());
}

double x_velocity(const LinearHamiltonianField& f, Point x0, double t) {
  return vector_field_value(f, flow_closed_form(f, x0, t)).x;
}

// Removes the candidate that reproduces the starting point (x0 already on the target line).
void drop_start_root(std::vector<double>& candidates, double start_value) {
  if (candidates.empty()) return;
  auto it = std::min_element(candidates.begin(), candidates.end(), [&](double u, double v) {
    return std::abs(u - start_value) < std::abs(v - start_value);
  });
  candidates.erase(it);
}

double closed_form_time(const LinearHamiltonianField& f, Point x0, double target) {
  const SingularKind sing = classify_singularity(f);
  const Vec2 d = x0 - sing.location;
  const double v = f.linear(d).x;
  const double q = target - sing.location.x;
  const bool starts_on_target = std::abs(x0.x - target) <= 1e-12 * (1.0 + std::abs(target));

  if (sing.kind == SingularType::Center) {
    const double w = sing.modulus;
    const double period = 2.0 * std::numbers::pi / w;
    const double amplitude = std::hypot(d.x, v / w);
    if (amplitude == 0.0 || std::abs(q) > amplitude) never_reaches(x0, target);
    const double phase = std::atan2(v / w, d.x);
    const double half_chord = std::acos(std::clamp(q / amplitude, -1.0, 1.0));
    std::vector<double> times;
    for (double angle : {phase + half_chord, phase - half_chord}) {
      double t = std::fmod(angle, 2.0 * std::numbers::pi);
      if (t <= 0.0) t += 2.0 * std::numbers::pi;
      times.push_back(t / w);
    }
    if (starts_on_target) {
      // The start root sits at t = 0, equivalently at one full period.
      for (double& t : times) {
        if (t < 0.5 * period && t < 1e-9 * period) t += period;
      }
      drop_start_root(times, period);
    }
    return *std::min_element(times.begin(), times.end());
  }

  // Saddle: x(t) - p*_x = P u + Q / u with u = exp(lambda t).
  const double l = sing.modulus;
  const double p_coef = 0.5 * (d.x + v / l);
  const double q_coef = 0.5 * (d.x - v / l);
  // p_coef u^2 - q u + q_coef = 0
  std::vector<double> roots;
  const double scale = std::max({std::abs(p_coef), std::abs(q), std::abs(q_coef)});
  if (std::abs(p_coef) <= 1e-14 * scale) {
    if (q != 0.0) roots.push_back(q_coef / q);
  } else {
    const double disc = q * q - 4.0 * p_coef * q_coef;
    if (disc < 0.0) never_reaches(x0, target);
    const double sq = std::sqrt(disc);
    const double big = 0.5 * (q + std::copysign(sq, q));
    if (big != 0.0) {
      roots.push_back(big / p_coef);
      roots.push_back(q_coef / big);
    } else {
      roots.push_back(0.0);
    }
  }
  if (starts_on_target) drop_start_root(roots, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (double u : roots) {
    if (u > 1.0 && std::log(u) > 0.0) best = std::min(best, std::log(u) / l);
  }
  if (!std::isfinite(best)) never_reaches(x0, target);
  return best;
}

double bisect(const LinearHamiltonianField& f, Point x0, double target, double lo, double hi) {
  double g_lo = flow_closed_form(f, x0, lo).x - target;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = flow_closed_form(f, x0, mid).x - target;
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double flight_time(const LinearHamiltonianField& f, Point x0, double target) {
  double t = closed_form_time(f, x0, target);

  const double delta = 1e-9 * (1.0 + t);
  const double lo = std::max(0.5 * t, t - delta);
  const double hi = t + delta;
  const double g_lo = flow_closed_form(f, x0, lo).x - target;
  const double g_hi = flow_closed_form(f, x0, hi).x - target;
  if ((g_lo < 0.0) != (g_hi < 0.0)) t = bisect(f, x0, target, lo, hi);

  if (std::abs(x_velocity(f, x0, t)) <= kTangencyTol) {
    std::ostringstream msg;
    msg << "flow touches x = " << target << " tangentially at t = " << t;
    throw Error(ErrorKind::TangentialContact, msg.str());
  }
  return t;
}

double flight_time_bracketed(const LinearHamiltonianField& f, Point x0, double target,
                             double t_max) {
  const double rate = std::sqrt(std::abs(f.discriminant()));
  const double step = std::min(t_max, 2.0 * std::numbers::pi / rate) / 4096.0;
  double t_prev = 1e-9 * step;
  double g_prev = flow_closed_form(f, x0, t_prev).x - target;
  if (g_prev == 0.0) {
    t_prev = 1e-3 * step;
    g_prev = flow_closed_form(f, x0, t_prev).x - target;
  }
  for (double t = step; t <= t_max + step; t += step) {
    const double g = flow_closed_form(f, x0, t).x - target;
    if (g == 0.0) return t;
    if ((g > 0.0) != (g_prev > 0.0)) return bisect(f, x0, target, t_prev, t);
    t_prev = t;
    g_prev = g;
  }
  never_reaches(x0, target);
}

std::vector<Point> orbit_samples(const LinearHamiltonianField& f, Point x0, double t_end, int n) {
  if (n < 2 || !(t_end > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "orbit_samples needs n >= 2 and t_end > 0");
  }
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(x0);
  for (int i = 1; i < n; ++i) {
    out.push_back(flow_closed_form(f, x0, t_end * i / (n - 1)));
  }
  return out;
}

}  // namespace pwlham
