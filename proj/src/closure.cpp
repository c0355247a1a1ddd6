#include "pwlham/closure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pwlham {

const char* outcome_name(const ClosureOutcome& outcome) {
  switch (outcome.index()) {
    case 0: return "NoSolution";
    case 1: return "UniqueCycleCandidate";
    default: return "Continuum";
  }
}

std::string outcome_branch(const ClosureOutcome& outcome) {
  if (const auto* n = std::get_if<NoSolution>(&outcome)) return n->branch;
  if (const auto* u = std::get_if<UniqueCycleCandidate>(&outcome)) return u->branch;
  return std::get<Continuum>(outcome).description;
}

ClosureResiduals residuals_two_zone(const PiecewiseSystem& system, double y0, double y1) {
  if (system.layout() != Layout::TwoZone) throw std::invalid_argument("two-zone system expected");
  const auto& l = system.left();
  const auto& r = system.right();
  return {-0.5 * (y0 - y1) * (r.b() * (y0 + y1) + 2.0 * r.alpha()),
          0.5 * (y0 - y1) * (l.b() * (y0 + y1) + 2.0 * l.alpha())};
}

ClosureResiduals residuals_three_zone(const PiecewiseSystem& system, double y0, double y1,
                                      double y2, double y3) {
  if (system.layout() != Layout::ThreeZone) throw std::invalid_argument("three-zone system expected");
  const auto& l = system.left();
  const auto& c = system.center();
  const auto& r = system.right();
  return {
      // H_R(1, y1) - H_R(1, y0)
      0.5 * (y1 - y0) * (r.b() * (y0 + y1) + 2.0 * (r.a() + r.alpha())),
      // H_C(1, y0) - H_C(-1, y3)
      0.5 * (y0 - y3) * (c.b() * (y0 + y3) + 2.0 * c.alpha()) - 2.0 * c.beta() +
          c.a() * (y0 + y3),
      // H_L(-1, y3) - H_L(-1, y2)
      0.5 * (y3 - y2) * (l.b() * (y2 + y3) - 2.0 * (l.a() - l.alpha())),
      // H_C(-1, y2) - H_C(1, y1)
      0.5 * (y2 - y1) * (c.b() * (y1 + y2) + 2.0 * c.alpha()) + 2.0 * c.beta() -
          c.a() * (y1 + y2),
  };
}

ClosureResiduals residuals_three_zone(const PiecewiseSystem& system, const CornerOrdinates& y) {
  return residuals_three_zone(system, y.y0, y.y1, y.y2, y.y3);
}

OuterElimination eliminate_outer(const PiecewiseSystem& system) {
  if (system.layout() != Layout::ThreeZone) throw std::invalid_argument("three-zone system expected");
  const ZeroTest zero(system);
  const auto& l = system.left();
  const auto& r = system.right();
  if (zero(r.b()) || zero(l.b())) {
    throw Error(ErrorKind::OuterZoneDegenerate,
                "b_R or b_L vanishes; the outer equations cannot be solved for y0, y2");
  }
  return {r.b(), r.a(), r.alpha(), l.b(), l.a(), l.alpha()};
}

HyperbolaCoefficients hyperbola_coefficients(const PiecewiseSystem& system) {
  const OuterElimination outer = eliminate_outer(system);
  const ZeroTest zero(system);
  const auto& c = system.center();
  if (zero(c.b())) {
    throw Error(ErrorKind::InnerZoneDegenerate, "b_C vanishes; the inner equations are linear");
  }
  const double bc = c.b();
  const double ac = c.a();
  const double alc = c.alpha();
  HyperbolaCoefficients h{};
  h.K = 2.0 / bc;
  h.A = (outer.b_r * (ac + alc) - 2.0 * bc * (outer.a_r + outer.alpha_r)) / (bc * outer.b_r);
  h.B = (ac - alc) / bc;
  h.C = 2.0 * (ac * alc + bc * c.beta()) / bc;
  h.D = -(ac + alc) / bc;
  h.E = (outer.b_l * (alc - ac) - 2.0 * bc * (outer.alpha_l - outer.a_l)) / (bc * outer.b_l);
  return h;
}

QuadraticRoots solve_quadratic(double qa, double qb, double qc) {
  QuadraticRoots out;
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  if (scale == 0.0) {
    out.identically_zero = true;
    return out;
  }
  const double tiny = kBranchTol * scale;
  if (std::abs(qa) <= tiny) {
    if (std::abs(qb) <= tiny) {
      out.identically_zero = std::abs(qc) <= tiny;
      return out;
    }
    out.roots.push_back(-qc / qb);
    return out;
  }
  double disc = qb * qb - 4.0 * qa * qc;
  const double disc_tol = kBranchTol * (qb * qb + std::abs(4.0 * qa * qc));
  if (disc < 0.0) {
    if (disc < -disc_tol) return out;
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  if (q == 0.0) {
    out.roots = {0.0, 0.0};
    return out;
  }
  out.roots = {q / qa, qc / q};
  return out;
}

namespace {

// Newton steps on the hyperbola pair; each step is kept only if it lowers the residual.
void polish(const HyperbolaCoefficients& h, double& y1, double& y3) {
  auto norm2 = [&](double u, double v) { return std::hypot(h.first(u, v), h.second(u, v)); };
  for (int it = 0; it < 3; ++it) {
    const double f1 = h.first(y1, y3);
    const double f2 = h.second(y1, y3);
    const double j11 = 2.0 * (y1 - h.A) / h.K;
    const double j12 = -2.0 * (y3 - h.B) / h.K;
    const double j21 = 2.0 * (y1 - h.D) / h.K;
    const double j22 = -2.0 * (y3 - h.E) / h.K;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) return;
    const double n1 = y1 - (f1 * j22 - f2 * j12) / det;
    const double n3 = y3 - (j11 * f2 - j21 * f1) / det;
    if (!(norm2(n1, n3) < norm2(y1, y3))) return;
    y1 = n1;
    y3 = n3;
  }
}

}  // namespace

AlgebraicSolutions three_zone_algebraic_solutions(const PiecewiseSystem& system) {
  const OuterElimination outer = eliminate_outer(system);
  const HyperbolaCoefficients h = hyperbola_coefficients(system);
  AlgebraicSolutions out;

  const ZeroTest same(std::max({std::abs(h.A), std::abs(h.B), std::abs(h.D), std::abs(h.E)}));
  if (same(h.A - h.D) && same(h.B - h.E)) {
    out.continuum = true;
    return out;
  }

  // Difference of the two hyperbolas: p y1 + q y3 + r = 0.
  const double p = 2.0 * (h.A - h.D);
  const double q = 2.0 * (h.E - h.B);
  const double r = h.D * h.D - h.E * h.E + h.B * h.B - h.A * h.A;
  const double kc = h.K * h.C;

  std::vector<std::pair<double, double>> points;  // (y1, y3)
  if (std::abs(q) >= std::abs(p)) {
    // y3 = m y1 + n
    const double m = -p / q;
    const double n = -r / q;
    const double nb = n - h.B;
    const QuadraticRoots roots =
        solve_quadratic(1.0 - m * m, -2.0 * h.A - 2.0 * m * nb, h.A * h.A - nb * nb - kc);
    if (roots.identically_zero) {
      out.continuum = true;
      return out;
    }
    for (double y1 : roots.roots) points.emplace_back(y1, m * y1 + n);
  } else {
    // y1 = m y3 + n
    const double m = -q / p;
    const double n = -r / p;
    const double na = n - h.A;
    const QuadraticRoots roots =
        solve_quadratic(m * m - 1.0, 2.0 * m * na + 2.0 * h.B, na * na - h.B * h.B - kc);
    if (roots.identically_zero) {
      out.continuum = true;
      return out;
    }
    for (double y3 : roots.roots) points.emplace_back(m * y3 + n, y3);
  }

  for (auto [y1, y3] : points) {
    polish(h, y1, y3);
    out.solutions.push_back({outer.y0_of_y1(y1), y1, outer.y2_of_y3(y3), y3});
  }
  return out;
}

bool strictly_ordered(const CornerOrdinates& y) {
  const double scale =
      std::max({std::abs(y.y0), std::abs(y.y1), std::abs(y.y2), std::abs(y.y3)});
  const double margin = kBranchTol * (1.0 + scale);
  return y.y0 - y.y1 > margin && y.y3 - y.y2 > margin;
}

namespace {

Continuum continuous_three_zone_family(const PiecewiseSystem& system) {
  const auto& c = system.center();
  const double a = c.a();
  const double b = c.b();
  const double alpha = c.alpha();
  const double beta_c = c.beta();
  Continuum out;
  out.description =
      "continuous three-zone field: closed orbits form a one-parameter family in y1 (no limit cycle)";
  out.parametrization = [=](double y1) -> std::optional<std::vector<double>> {
    const double disc = a * a + 2.0 * a * (b * y1 - alpha) + (b * y1 + alpha) * (b * y1 + alpha) -
                        4.0 * b * beta_c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double y0 = (-b * y1 - 2.0 * (a + alpha)) / b;
    const double y2 = (a - alpha + root) / b;
    const double y3 = (a - alpha - root) / b;
    return std::vector<double>{y0, y1, y2, y3};
  };
  return out;
}

ClosureOutcome degenerate_three_zone(const PiecewiseSystem& system) {
  const ZeroTest zero(system);
  const auto& l = system.left();
  const auto& c = system.center();
  const auto& r = system.right();

  const bool br = zero(r.b());
  const bool bl = zero(l.b());
  const bool bc = zero(c.b());
  const bool pr = zero(r.a() + r.alpha());
  const bool pl = zero(l.a() - l.alpha());
  const bool pc = zero(c.alpha() - c.a());
  const double mixed = r.b() * c.alpha() * (l.a() - l.alpha()) +
                       c.a() * r.b() * (l.alpha() - l.a()) +
                       l.b() * (r.a() + r.alpha()) * (c.a() + c.alpha()) +
                       2.0 * l.b() * r.b() * c.beta();
  const bool mixed_zero = zero(mixed);

  auto none = [](std::string why) -> ClosureOutcome { return NoSolution{std::move(why)}; };
  auto family = [](std::string why) -> ClosureOutcome { return Continuum{std::move(why), {}}; };

  // Conditions under which the closure equations have no admissible solution.
  if (br && !pr) return none("b_R = 0 and a_R + alpha_R != 0: right-zone equation has no root with y1 < y0");
  if (bl && !pl) return none("b_L = 0 and a_L - alpha_L != 0: left-zone equation has no root with y2 < y3");
  if (br && pr && bl && pl && bc && pc) return none("b_R = a_R + alpha_R = b_L = a_L - alpha_L = b_C = alpha_C - a_C = 0");
  if (br && pr && bc && pc && !bl) return none("b_R = a_R + alpha_R = b_C = alpha_C - a_C = 0 and b_L != 0");
  if (!br && bl && pl && bc && pc) return none("b_R != 0 and b_L = a_L - alpha_L = b_C = alpha_C - a_C = 0");
  if (!br && !bl && bc && !mixed_zero) return none("b_R b_L != 0, b_C = 0 and the inner linear equations are inconsistent");

  // Conditions under which the closure equations have infinitely many solutions.
  if (br && pr && bl && pl && bc && !pc) return family("b_R = a_R + alpha_R = b_L = a_L - alpha_L = b_C = 0, alpha_C - a_C != 0: continuum");
  if (br && pr && bl && pl && !bc) return family("b_R = a_R + alpha_R = b_L = a_L - alpha_L = 0, b_C != 0: continuum");
  if (br && pr && bc && !pc && !bl) return family("b_R = a_R + alpha_R = b_C = 0, alpha_C - a_C != 0, b_L != 0: continuum");
  if (br && pr && !bl && !bc) return family("b_R = a_R + alpha_R = 0, b_L b_C != 0: continuum");
  if (!br && bl && pl && bc && !pc) return family("b_R != 0, b_L = a_L - alpha_L = b_C = 0, alpha_C - a_C != 0: continuum");
  if (!br && !bc && bl && pl) return family("b_R b_C != 0, b_L = a_L - alpha_L = 0: continuum");
  if (!br && !bl && bc && mixed_zero) return family("b_R b_L != 0, b_C = 0 and the inner linear equations coincide: continuum");

  throw std::logic_error("degenerate three-zone branch table is not exhaustive");
}

}  // namespace

ClosureOutcome solve_three_zone(const PiecewiseSystem& system) {
  if (system.layout() != Layout::ThreeZone) throw std::invalid_argument("three-zone system expected");

  if (is_continuous(system).continuous) {
    if (ZeroTest(system)(system.center().b())) {
      return NoSolution{"continuous three-zone field with b = 0: no closed orbit"};
    }
    return continuous_three_zone_family(system);
  }

  const ZeroTest zero(system);
  if (zero(system.left().b()) || zero(system.center().b()) || zero(system.right().b())) {
    return degenerate_three_zone(system);
  }

  const AlgebraicSolutions algebraic = three_zone_algebraic_solutions(system);
  if (algebraic.continuum) {
    return Continuum{"hyperbolas coincide (A = D, B = E): continuum of closed orbits", {}};
  }
  std::vector<CornerOrdinates> admissible;
  for (const auto& y : algebraic.solutions) {
    if (strictly_ordered(y)) admissible.push_back(y);
  }
  if (admissible.empty()) {
    return NoSolution{"generic branch: no hyperbola intersection with y1 < y0 and y2 < y3"};
  }
  if (admissible.size() > 1) {
    throw std::logic_error("more than one ordered closure solution; swap symmetry violated");
  }
  return UniqueCycleCandidate{admissible.front(), "generic branch: unique ordered hyperbola intersection"};
}

ClosureOutcome solve_two_zone(const PiecewiseSystem& system) {
  if (system.layout() != Layout::TwoZone) throw std::invalid_argument("two-zone system expected");
  const ZeroTest zero(system);
  const auto& l = system.left();
  const auto& r = system.right();
  const bool br = zero(r.b());
  const bool bl = zero(l.b());
  const bool ar = zero(r.alpha());
  const bool al = zero(l.alpha());

  auto line_family = [](double b, double alpha, std::string why) {
    Continuum out;
    out.description = std::move(why);
    out.parametrization = [=](double y1) -> std::optional<std::vector<double>> {
      return std::vector<double>{-(b * y1 + 2.0 * alpha) / b, y1};
    };
    return out;
  };

  if (br && !ar) return NoSolution{"b_R = 0 and alpha_R != 0: no closed orbit"};
  if (bl && !al) return NoSolution{"b_L = 0 and alpha_L != 0: no closed orbit"};
  if (br && bl) return Continuum{"b_R = alpha_R = b_L = alpha_L = 0: every pair y1 < y0 closes", {}};
  if (br) return line_family(l.b(), l.alpha(), "b_R = alpha_R = 0, b_L != 0: continuum y0 = -(b_L y1 + 2 alpha_L)/b_L");
  if (bl) return line_family(r.b(), r.alpha(), "b_L = alpha_L = 0, b_R != 0: continuum y0 = -(b_R y1 + 2 alpha_R)/b_R");

  // Both b nonzero: closure needs alpha_R / b_R = alpha_L / b_L.
  const double ratio_r = r.alpha() / r.b();
  const double ratio_l = l.alpha() / l.b();
  if (ZeroTest(std::max(std::abs(ratio_r), std::abs(ratio_l)))(ratio_r - ratio_l)) {
    return line_family(r.b(), r.alpha(), "b_L b_R != 0 with proportional (b, alpha): continuum y0 = -(b y1 + 2 alpha)/b");
  }
  return NoSolution{"b_L b_R != 0 with non-proportional (b, alpha): no closed orbit"};
}

ClosureOutcome solve(const PiecewiseSystem& system) {
  return system.layout() == Layout::TwoZone ? solve_two_zone(system) : solve_three_zone(system);
}

}  // namespace pwlham
