#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pwlham/cycle.hpp"
#include "pwlham/fixtures.hpp"
#include "pwlham/poincare.hpp"
#include "support.hpp"

using namespace pwlham;

namespace {

PiecewiseSystem fixture(const std::string& name) { return find_fixture(name).system; }

double golden_y0(const std::string& name) {
  for (const auto& g : testing::golden_tuples()) {
    if (g.name == name) return g.y.y0;
  }
  FAIL("unknown example " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("interior center orbit returns after one period") {
  // The center zone rotates around the origin; radius 0.5 never reaches x = +-1.
  const auto sys = PiecewiseSystem::three_zone({0, 1, -1, 3, 0}, {0, 1, -1, 0, 0}, {0, 1, -1, -3, 0});
  const double tol = 1e-9;
  const auto traj = integrate_numeric(sys, {0.5, 0}, 2.0 * std::numbers::pi, tol);
  CHECK(traj.events.empty());
  CHECK(norm(traj.states.back().point - Point{0.5, 0}) <= tol);
  CHECK(traj.states.back().time == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("Example 1: first event is the next corner") {
  const auto sys = fixture("CCC");
  const double y0 = golden_y0("CCC");
  const auto traj = integrate_numeric(sys, {1, y0}, 5.0, 1e-9, [](const TrajectoryEvent&) { return true; });
  REQUIRE(traj.events.size() == 1);
  const auto& ev = traj.events.front();
  CHECK(ev.line == LineId::SigmaR);
  CHECK(std::abs(ev.point.y + y0) <= 1e-6);
  CHECK(std::abs(ev.time - 0.5 * std::atan(20832.0 * std::sqrt(295865.0) / 25320661.0)) <= 1e-6);
}

TEST_CASE("trajectory invariants: events on lines, increasing times, bounded energy drift") {
  const double tol = 1e-9;
  for (const auto& g : testing::golden_tuples()) {
    CAPTURE(g.name);
    const auto sys = fixture(g.name);
    const auto traj = integrate_numeric(sys, {1, g.y.y0}, 3.5 * find_limit_cycle(sys).certificate->period, tol);
    CHECK(traj.events.size() >= 12);
    for (const auto& ev : traj.events) CHECK(std::abs(ev.point.x - abscissa(ev.line)) <= 1e-10);
    for (std::size_t i = 1; i < traj.states.size(); ++i) CHECK(traj.states[i].time >= traj.states[i - 1].time);

    // Energy drift of each zone arc, measured between consecutive events.
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= traj.states.size(); ++i) {
      if (i < traj.states.size() && traj.states[i].zone == traj.states[begin].zone) continue;
      const auto& field = sys.field(traj.states[begin].zone);
      const double h0 = hamiltonian_value(field, traj.states[begin].point);
      double drift = 0.0;
      for (std::size_t k = begin; k < i; ++k) {
        drift = std::max(drift, std::abs(hamiltonian_value(field, traj.states[k].point) - h0));
      }
      CHECK(drift <= 10.0 * tol * (1.0 + std::abs(h0)));
      begin = i;
    }
  }
}

TEST_CASE("return map fixes the analytic cycle") {
  for (const char* name : {"CCC", "CSC"}) {
    CAPTURE(name);
    const double y0 = golden_y0(name);
    CHECK(std::abs(return_map(fixture(name), y0) - y0) <= 1e-6);
  }
}

TEST_CASE("displacement changes sign across Example 1's cycle") {
  const auto sys = fixture("CCC");
  const double y0 = golden_y0("CCC");
  const double above = return_map(sys, y0 + 0.1) - (y0 + 0.1);
  const double below = return_map(sys, y0 - 0.1) - (y0 - 0.1);
  CHECK(above * below < 0.0);
}

TEST_CASE("isolation: displacement changes sign within +-1e-3 for all six examples") {
  for (const auto& g : testing::golden_tuples()) {
    CAPTURE(g.name);
    const auto sys = fixture(g.name);
    const double above = return_map(sys, g.y.y0 + 1e-3) - (g.y.y0 + 1e-3);
    const double below = return_map(sys, g.y.y0 - 1e-3) - (g.y.y0 - 1e-3);
    CHECK(above * below < 0.0);
  }
}

TEST_CASE("fixed_point") {
  for (const char* name : {"CCC", "SSS"}) {
    CAPTURE(name);
    const double y0 = golden_y0(name);
    const double lo = y0 - std::min(0.2, 0.5 * y0);
    CHECK(std::abs(fixed_point(fixture(name), lo, y0 + 0.2) - y0) <= 1e-6);
  }
  const double star = 0.37;
  CHECK(bisect_sign_change([&](double y) { return std::pow(star - y, 3); }, -1, 2) == doctest::Approx(star).epsilon(1e-9));
  try {
    bisect_sign_change([](double y) { return y * y + 1; }, -1, 1);
    FAIL("expected BadBracket");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadBracket);
  }
}

TEST_CASE("oracle agrees with the analytic cycle for all six examples") {
  for (const auto& g : testing::golden_tuples()) {
    CAPTURE(g.name);
    const auto sys = fixture(g.name);
    const auto cert = *find_limit_cycle(sys).certificate;
    const double y = fixed_point_near(sys, g.y.y0);
    CHECK(std::abs(y - g.y.y0) <= 1e-6);
    CHECK(std::abs(return_map_with_time(sys, g.y.y0).time - cert.period) <= 1e-6);
  }
}

TEST_CASE("unstable SSC cycle: wide brackets reach sliding, fixed_point_near shrinks them") {
  const auto sys = fixture("SSC");
  const double y0 = golden_y0("SSC");
  try {
    fixed_point(sys, y0 - 1e-2, y0 + 1e-2);
    FAIL("expected SlidingEncountered");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SlidingEncountered);
  }
  CHECK(std::abs(fixed_point_near(sys, y0) - y0) <= 1e-6);
  // Nothing to find far from any cycle.
  CHECK_THROWS_AS(fixed_point_near(fixture("CCC"), 5.0), Error);
}

TEST_CASE("halving the tolerance shrinks the return error on Example 1") {
  const auto sys = fixture("CCC");
  const double y0 = golden_y0("CCC");
  double tol = 1e-6;
  double previous = INFINITY;
  for (int k = 0; k <= 4; ++k, tol *= 0.5) {
    const double err = std::abs(return_map(sys, y0, {tol, 100.0}) - y0);
    CAPTURE(tol);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("oracle error conditions") {
  // Sliding on x = 1: both sides push toward the line.
  const auto slide = PiecewiseSystem::three_zone({0, 1, -1, 0, 0}, {0, 1, -1, 5, 0}, {0, 1, -1, -5, 0});
  try {
    integrate_numeric(slide, {0.5, 0}, 10.0, 1e-9);
    FAIL("expected SlidingEncountered");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SlidingEncountered);
  }
  const auto sys = fixture("CCC");
  const double y0 = golden_y0("CCC");
  try {
    return_map(sys, y0, {1e-9, 0.5});
    FAIL("expected NoReturn");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoReturn);
  }
  try {
    return_map(sys, -y0);  // leaves the right zone instead of entering it
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_THROWS_AS(integrate_numeric(sys, {0, 0}, 1.0, 0.0), Error);
}

TEST_CASE("trajectory CSV") {
  const auto sys = fixture("CCC");
  const auto traj = integrate_numeric(sys, {1, golden_y0("CCC")}, 0.1, 1e-6);
  std::ostringstream out;
  write_trajectory_csv(traj, out);
  const std::string csv = out.str();
  CHECK(csv.rfind("t,x,y,zone\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == traj.states.size() + 1);
  CHECK(csv.find(",R\n") != std::string::npos);
}
