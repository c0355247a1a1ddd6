#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pwlham/model.hpp"

namespace pwlham {

/// Relative cutoff for "coefficient is zero" in branch dispatch:
/// |v| <= kBranchTol * (1 + max |coefficient|).
inline constexpr double kBranchTol = 1e-10;

/// Hamiltonian-matching residuals; 2 entries for TwoZone, 4 for ThreeZone.
using ClosureResiduals = std::vector<double>;

/// Corner ordinates of a three-zone periodic orbit: (1, y0), (1, y1), (-1, y2), (-1, y3).
struct CornerOrdinates {
  double y0 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;

  /// The swapped tuple (y1, y0, y3, y2); also a root of the closure equations.
  CornerOrdinates swapped() const { return {y1, y0, y3, y2}; }
  bool ordered() const { return y1 < y0 && y2 < y3; }
};

struct NoSolution {
  std::string branch;
};

struct UniqueCycleCandidate {
  CornerOrdinates y;
  std::string branch;
};

/// A one-parameter family of closed orbits. When available, `parametrization`
/// maps y1 to the full ordinate tuple in residual order ((y0, y1) or
/// (y0, y1, y2, y3)); it returns nullopt where the family is undefined.
struct Continuum {
  std::string description;
  std::function<std::optional<std::vector<double>>(double)> parametrization;
};

using ClosureOutcome = std::variant<NoSolution, UniqueCycleCandidate, Continuum>;

const char* outcome_name(const ClosureOutcome& outcome);
std::string outcome_branch(const ClosureOutcome& outcome);

/// Scale-aware zero test used for every branch decision on one system.
class ZeroTest {
 public:
  explicit ZeroTest(double scale) : cutoff_(kBranchTol * (1.0 + scale)) {}
  explicit ZeroTest(const PiecewiseSystem& system) : ZeroTest(system.coefficient_scale()) {}
  bool operator()(double v) const { return std::abs(v) <= cutoff_; }
  double cutoff() const { return cutoff_; }

 private:
  double cutoff_;
};

ClosureResiduals residuals_two_zone(const PiecewiseSystem& system, double y0, double y1);
ClosureResiduals residuals_three_zone(const PiecewiseSystem& system, double y0, double y1,
                                      double y2, double y3);
ClosureResiduals residuals_three_zone(const PiecewiseSystem& system, const CornerOrdinates& y);

/// Solutions of the two outer-zone equations for y0 and y2.
struct OuterElimination {
  double b_r, a_r, alpha_r;
  double b_l, a_l, alpha_l;

  double y0_of_y1(double y1) const { return (-b_r * y1 - 2.0 * (a_r + alpha_r)) / b_r; }
  double y2_of_y3(double y3) const { return (-b_l * y3 - 2.0 * (alpha_l - a_l)) / b_l; }
};

/// Throws Error{OuterZoneDegenerate} when b_R or b_L is zero (scaled test).
OuterElimination eliminate_outer(const PiecewiseSystem& system);

/// The two hyperbolas (y1 - A)^2/K - (y3 - B)^2/K - C = 0 and
/// (y1 - D)^2/K - (y3 - E)^2/K - C = 0 in the y1 y3 plane.
struct HyperbolaCoefficients {
  double K, A, B, C, D, E;

  double first(double y1, double y3) const {
    return (y1 - A) * (y1 - A) / K - (y3 - B) * (y3 - B) / K - C;
  }
  double second(double y1, double y3) const {
    return (y1 - D) * (y1 - D) / K - (y3 - E) * (y3 - E) / K - C;
  }
};

/// Factors relating the hyperbolas to the eliminated residuals:
///   first  = kFirstHyperbolaFactor  * residual_2(y0(y1), y3)
///   second = kSecondHyperbolaFactor * residual_4(y1, y2(y3))
inline constexpr double kFirstHyperbolaFactor = 1.0;
inline constexpr double kSecondHyperbolaFactor = -1.0;

/// Throws Error{InnerZoneDegenerate} if b_C = 0, Error{OuterZoneDegenerate} if b_R or b_L = 0.
HyperbolaCoefficients hyperbola_coefficients(const PiecewiseSystem& system);

/// Real roots of qa u^2 + qb u + qc, computed without cancellation. A
/// discriminant within a relative tolerance below zero counts as a double root.
struct QuadraticRoots {
  std::vector<double> roots;
  bool identically_zero = false;
};
QuadraticRoots solve_quadratic(double qa, double qb, double qc);

/// Every real solution of the reduced generic-branch system (both
/// intersections of the hyperbolas), before any ordering filter.
struct AlgebraicSolutions {
  bool continuum = false;
  std::vector<CornerOrdinates> solutions;
};
/// Requires b_L b_C b_R != 0; throws the eliminate/hyperbola errors otherwise.
AlgebraicSolutions three_zone_algebraic_solutions(const PiecewiseSystem& system);

/// Strict ordering y1 < y0 and y2 < y3 with a scaled margin against round-off.
bool strictly_ordered(const CornerOrdinates& y);

ClosureOutcome solve_three_zone(const PiecewiseSystem& system);
ClosureOutcome solve_two_zone(const PiecewiseSystem& system);
ClosureOutcome solve(const PiecewiseSystem& system);

}  // namespace pwlham
