#include "pwlham/model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace pwlham {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateField: return "DegenerateField";
    case ErrorKind::OuterZoneDegenerate: return "OuterZoneDegenerate";
    case ErrorKind::InnerZoneDegenerate: return "InnerZoneDegenerate";
    case ErrorKind::NotOnSwitchingLine: return "NotOnSwitchingLine";
    case ErrorKind::NeverReaches: return "NeverReaches";
    case ErrorKind::TangentialContact: return "TangentialContact";
    case ErrorKind::SlidingEncountered: return "SlidingEncountered";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NoReturn: return "NoReturn";
    case ErrorKind::BadBracket: return "BadBracket";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

const char* to_string(ZoneId zone) {
  switch (zone) {
    case ZoneId::L: return "L";
    case ZoneId::C: return "C";
    case ZoneId::R: return "R";
  }
  return "?";
}

const char* to_string(LineId line) {
  switch (line) {
    case LineId::SigmaL: return "Sigma_L";
    case LineId::SigmaC: return "Sigma_C";
    case LineId::SigmaR: return "Sigma_R";
  }
  return "?";
}

const char* to_string(Layout layout) {
  return layout == Layout::TwoZone ? "two" : "three";
}

double abscissa(LineId line) {
  switch (line) {
    case LineId::SigmaL: return -1.0;
    case LineId::SigmaC: return 0.0;
    case LineId::SigmaR: return 1.0;
  }
  return 0.0;
}

LinearHamiltonianField::LinearHamiltonianField(double a, double b, double c, double alpha,
                                               double beta)
    : a_(a), b_(b), c_(c), alpha_(alpha), beta_(beta) {
  if (!(std::abs(discriminant()) > kNondegeneracyTol)) {
    std::ostringstream msg;
    msg << "degenerate zone field: a^2 + b c = " << discriminant()
        << " (singular point is not isolated)";
    throw Error(ErrorKind::DegenerateField, msg.str());
  }
}

PiecewiseSystem::PiecewiseSystem(Layout layout, std::vector<LinearHamiltonianField> fields)
    : layout_(layout), fields_(std::move(fields)) {
  const std::size_t expected = layout_ == Layout::TwoZone ? 2 : 3;
  if (fields_.size() != expected) {
    std::ostringstream msg;
    msg << "layout '" << to_string(layout_) << "' needs " << expected << " zone fields, got "
        << fields_.size();
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

PiecewiseSystem PiecewiseSystem::two_zone(const LinearHamiltonianField& left,
                                          const LinearHamiltonianField& right) {
  return PiecewiseSystem(Layout::TwoZone, {left, right});
}

PiecewiseSystem PiecewiseSystem::three_zone(const LinearHamiltonianField& left,
                                            const LinearHamiltonianField& center,
                                            const LinearHamiltonianField& right) {
  return PiecewiseSystem(Layout::ThreeZone, {left, center, right});
}

const LinearHamiltonianField& PiecewiseSystem::center() const {
  if (layout_ != Layout::ThreeZone) throw std::logic_error("two-zone system has no center zone");
  return fields_[1];
}

const LinearHamiltonianField& PiecewiseSystem::field(ZoneId zone) const {
  switch (zone) {
    case ZoneId::L: return left();
    case ZoneId::C: return center();
    case ZoneId::R: return right();
  }
  return left();
}

std::vector<ZoneId> PiecewiseSystem::zones() const {
  if (layout_ == Layout::TwoZone) return {ZoneId::L, ZoneId::R};
  return {ZoneId::L, ZoneId::C, ZoneId::R};
}

std::vector<LineId> PiecewiseSystem::lines() const {
  if (layout_ == Layout::TwoZone) return {LineId::SigmaC};
  return {LineId::SigmaL, LineId::SigmaR};
}

ZoneId PiecewiseSystem::zone_left_of(LineId line) const {
  if (layout_ == Layout::TwoZone) {
    if (line != LineId::SigmaC) throw Error(ErrorKind::NotOnSwitchingLine, "two-zone layout only has Sigma_C");
    return ZoneId::L;
  }
  if (line == LineId::SigmaC) throw Error(ErrorKind::NotOnSwitchingLine, "three-zone layout has no Sigma_C");
  return line == LineId::SigmaL ? ZoneId::L : ZoneId::C;
}

ZoneId PiecewiseSystem::zone_right_of(LineId line) const {
  if (layout_ == Layout::TwoZone) {
    if (line != LineId::SigmaC) throw Error(ErrorKind::NotOnSwitchingLine, "two-zone layout only has Sigma_C");
    return ZoneId::R;
  }
  if (line == LineId::SigmaC) throw Error(ErrorKind::NotOnSwitchingLine, "three-zone layout has no Sigma_C");
  return line == LineId::SigmaL ? ZoneId::C : ZoneId::R;
}

std::pair<double, double> PiecewiseSystem::strip(ZoneId zone) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (layout_ == Layout::TwoZone) {
    return zone == ZoneId::L ? std::pair{-inf, 0.0} : std::pair{0.0, inf};
  }
  switch (zone) {
    case ZoneId::L: return {-inf, -1.0};
    case ZoneId::C: return {-1.0, 1.0};
    case ZoneId::R: return {1.0, inf};
  }
  return {-inf, inf};
}

ZoneId PiecewiseSystem::zone_containing(double x) const {
  if (layout_ == Layout::TwoZone) return x < 0.0 ? ZoneId::L : ZoneId::R;
  if (x < -1.0) return ZoneId::L;
  if (x < 1.0) return ZoneId::C;
  return ZoneId::R;
}

double PiecewiseSystem::coefficient_scale() const {
  double scale = 0.0;
  for (const auto& f : fields_) {
    for (double v : {f.a(), f.b(), f.c(), f.alpha(), f.beta()}) scale = std::max(scale, std::abs(v));
  }
  return scale;
}

double hamiltonian_value(const LinearHamiltonianField& f, Point p) {
  const auto [x, y] = p;
  return 0.5 * f.b() * y * y - 0.5 * f.c() * x * x + f.a() * x * y + f.alpha() * y - f.beta() * x;
}

Vec2 vector_field_value(const LinearHamiltonianField& f, Point p) {
  return {f.a() * p.x + f.b() * p.y + f.alpha(), f.c() * p.x - f.a() * p.y + f.beta()};
}

SingularKind classify_singularity(const LinearHamiltonianField& f) {
  const double disc = f.discriminant();
  if (std::abs(disc) <= kNondegeneracyTol) {
    throw Error(ErrorKind::DegenerateField, "singular point is not isolated");
  }
  // det [[a, b], [c, -a]] = -(a^2 + b c); solve M p = -(alpha, beta) by Cramer's rule.
  const double det = -disc;
  const Point location{(f.a() * f.alpha() + f.b() * f.beta()) / det,
                       (f.c() * f.alpha() - f.a() * f.beta()) / det};
  if (disc < 0.0) return {SingularType::Center, std::sqrt(-disc), location};
  return {SingularType::Saddle, std::sqrt(disc), location};
}

namespace {

bool same(double u, double v) { return std::abs(u - v) <= kContinuityTol; }

void require_equal(ContinuityReport& report, const char* what, double u, double v) {
  if (same(u, v)) return;
  std::ostringstream msg;
  msg << what << ": " << u << " != " << v;
  report.violations.push_back(msg.str());
}

}  // namespace

ContinuityReport is_continuous(const PiecewiseSystem& system) {
  ContinuityReport report;
  if (system.layout() == Layout::TwoZone) {
    const auto& l = system.left();
    const auto& r = system.right();
    require_equal(report, "a_L = a_R", l.a(), r.a());
    require_equal(report, "b_L = b_R", l.b(), r.b());
    require_equal(report, "alpha_L = alpha_R", l.alpha(), r.alpha());
    require_equal(report, "beta_L = beta_R", l.beta(), r.beta());
  } else {
    const auto& l = system.left();
    const auto& c = system.center();
    const auto& r = system.right();
    require_equal(report, "a_L = a_C", l.a(), c.a());
    require_equal(report, "a_C = a_R", c.a(), r.a());
    require_equal(report, "b_L = b_C", l.b(), c.b());
    require_equal(report, "b_C = b_R", c.b(), r.b());
    require_equal(report, "alpha_L = alpha_C", l.alpha(), c.alpha());
    require_equal(report, "alpha_C = alpha_R", c.alpha(), r.alpha());
    require_equal(report, "beta_R - beta_C - c_C + c_R = 0",
                  r.beta() - c.beta() - c.c() + r.c(), 0.0);
    require_equal(report, "beta_L - beta_C - c_L + c_C = 0",
                  l.beta() - c.beta() - l.c() + c.c(), 0.0);
  }
  report.continuous = report.violations.empty();
  return report;
}

std::vector<ZoneSingularity> singular_points_in_zone(const PiecewiseSystem& system) {
  std::vector<ZoneSingularity> out;
  for (ZoneId zone : system.zones()) {
    const SingularKind kind = classify_singularity(system.field(zone));
    const auto [lo, hi] = system.strip(zone);
    const bool inside = kind.location.x > lo && kind.location.x < hi;
    out.push_back({zone, kind, inside});
  }
  return out;
}

}  // namespace pwlham
