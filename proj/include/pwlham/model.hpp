#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwlham {

enum class ErrorKind {
  DegenerateField,
  OuterZoneDegenerate,
  InnerZoneDegenerate,
  NotOnSwitchingLine,
  NeverReaches,
  TangentialContact,
  SlidingEncountered,
  StepUnderflow,
  NoReturn,
  BadBracket,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
  friend Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// |a^2 + b c| must exceed this for a zone field to have an isolated singularity.
inline constexpr double kNondegeneracyTol = 1e-12;
/// Absolute tolerance for coefficient equality in continuity checks.
inline constexpr double kContinuityTol = 1e-12;

/// One zone's affine Hamiltonian field X(x, y) = (a x + b y + alpha, c x - a y + beta).
///
/// The field is the symplectic gradient (dH/dy, -dH/dx) of
/// H(x, y) = b/2 y^2 - c/2 x^2 + a x y + alpha y - beta x.
class LinearHamiltonianField {
 public:
  /// Throws Error{DegenerateField} when |a^2 + b c| <= 1e-12.
  LinearHamiltonianField(double a, double b, double c, double alpha, double beta);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// a^2 + b c; negative for a center, positive for a saddle.
  double discriminant() const { return a_ * a_ + b_ * c_; }

  /// Linear part [[a, b], [c, -a]] applied to v.
  Vec2 linear(Vec2 v) const { return {a_ * v.x + b_ * v.y, c_ * v.x - a_ * v.y}; }

  friend bool operator==(const LinearHamiltonianField&, const LinearHamiltonianField&) = default;

 private:
  double a_, b_, c_, alpha_, beta_;
};

enum class Layout { TwoZone, ThreeZone };

enum class ZoneId { L, C, R };

/// Switching lines: Sigma_L is x = -1, Sigma_C is x = 0, Sigma_R is x = 1.
enum class LineId { SigmaL, SigmaC, SigmaR };

const char* to_string(ZoneId zone);
const char* to_string(LineId line);
const char* to_string(Layout layout);

double abscissa(LineId line);

/// Zones are L, R for TwoZone and L, C, R for ThreeZone; fields are stored in that order.
class PiecewiseSystem {
 public:
  PiecewiseSystem(Layout layout, std::vector<LinearHamiltonianField> fields);

  static PiecewiseSystem two_zone(const LinearHamiltonianField& left,
                                  const LinearHamiltonianField& right);
  static PiecewiseSystem three_zone(const LinearHamiltonianField& left,
                                    const LinearHamiltonianField& center,
                                    const LinearHamiltonianField& right);

  Layout layout() const { return layout_; }
  std::span<const LinearHamiltonianField> fields() const { return fields_; }

  const LinearHamiltonianField& left() const { return fields_.front(); }
  const LinearHamiltonianField& right() const { return fields_.back(); }
  /// Throws std::logic_error for a two-zone system.
  const LinearHamiltonianField& center() const;
  const LinearHamiltonianField& field(ZoneId zone) const;

  std::vector<ZoneId> zones() const;
  std::vector<LineId> lines() const;

  /// Zones on the left and right side of a switching line of this layout.
  ZoneId zone_left_of(LineId line) const;
  ZoneId zone_right_of(LineId line) const;

  /// Open strip (lo, hi) of a zone; infinite ends use +-infinity.
  std::pair<double, double> strip(ZoneId zone) const;

  /// Zone whose open strip contains x; points on a line map to the zone on its right.
  ZoneId zone_containing(double x) const;

  /// Largest absolute coefficient over all zones.
  double coefficient_scale() const;

  friend bool operator==(const PiecewiseSystem&, const PiecewiseSystem&) = default;

 private:
  Layout layout_;
  std::vector<LinearHamiltonianField> fields_;
};

enum class SingularType { Center, Saddle };

struct SingularKind {
  SingularType kind;
  double modulus;  // omega for a center, lambda for a saddle
  Point location;
};

double hamiltonian_value(const LinearHamiltonianField& field, Point p);
Vec2 vector_field_value(const LinearHamiltonianField& field, Point p);
SingularKind classify_singularity(const LinearHamiltonianField& field);

struct ContinuityReport {
  bool continuous = true;
  std::vector<std::string> violations;
};

ContinuityReport is_continuous(const PiecewiseSystem& system);

struct ZoneSingularity {
  ZoneId zone;
  SingularKind singularity;
  bool in_zone;
};

std::vector<ZoneSingularity> singular_points_in_zone(const PiecewiseSystem& system);

}  // namespace pwlham
