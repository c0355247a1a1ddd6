#pragma once

#include <vector>

#include "pwlham/model.hpp"

namespace pwlham {

/// First components of the two one-sided fields below this are treated as zero.
inline constexpr double kTangencyTol = 1e-10;

struct FlowState {
  Point point;
  double time = 0.0;
  ZoneId zone = ZoneId::L;
};

enum class ContactLabel { Crossing, Sliding, Escaping, Tangency };

const char* to_string(ContactLabel label);

/// Contact of the two adjacent fields with a switching line at one point.
/// `left` and `right` are the derivatives of h along the fields of the zones
/// to the left and right of the line (the x-components, since grad h = (1, 0)).
struct CrossingClassification {
  ContactLabel label;
  double left;
  double right;
  double product;
};

/// exp(t M) for the linear part M = [[a, b], [c, -a]], in closed form.
struct Matrix2 {
  double m00, m01, m10, m11;
  Vec2 operator*(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
};
Matrix2 propagator(const LinearHamiltonianField& field, double t);

/// p* + exp(t M)(x0 - p*), where p* is the field's singular point.
Point flow_closed_form(const LinearHamiltonianField& field, Point x0, double t);

/// Labels by the sign pattern of the one-sided derivatives: both nonzero with
/// equal sign is Crossing, (left > 0, right < 0) is Sliding, (left < 0,
/// right > 0) is Escaping, and any derivative within kTangencyTol of zero is
/// Tangency. Throws Error{NotOnSwitchingLine} if p is off the line or the line
/// is not part of the layout.
CrossingClassification classify_boundary_point(const PiecewiseSystem& system, Point p, LineId line);

/// Smallest t > 0 at which the flow from x0 reaches the vertical line x = target.
///
/// Closed form: R cos(w t - phi) = target - p*_x for a center, a quadratic in
/// u = exp(lambda t) for a saddle. The result is refined by bisection on
/// x(t) - target. Throws NeverReaches when no positive root exists and
/// TangentialContact when the first hit has zero x-velocity.
double flight_time(const LinearHamiltonianField& field, Point x0, double target);

/// Independent check of flight_time: scans x(t) - target on a uniform time
/// grid up to t_max, then bisects the first sign change to 1e-12.
double flight_time_bracketed(const LinearHamiltonianField& field, Point x0, double target,
                             double t_max);

/// n points at equally spaced times in [0, t_end]; the first is x0.
std::vector<Point> orbit_samples(const LinearHamiltonianField& field, Point x0, double t_end,
                                 int n);

}  // namespace pwlham
