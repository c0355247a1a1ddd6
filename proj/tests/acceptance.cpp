// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "pwlham/cycle.hpp"
#include "pwlham/fixtures.hpp"
#include "pwlham/io.hpp"
#include "pwlham/poincare.hpp"
#include "support.hpp"

using namespace pwlham;
using testing::Rng;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PiecewiseSystem fixture(const std::string& name) { return find_fixture(name).system; }

CycleCertificate certificate(const std::string& name) {
  auto search = find_limit_cycle(fixture(name));
  if (!search.certificate) throw std::runtime_error(name + ": " + search.diagnostic);
  return *search.certificate;
}

void golden_corners(Verdict& v) {
  double worst = 0.0, slowest = 0.0;
  for (const auto& g : testing::golden_tuples()) {
    const auto sys = fixture(g.name);
    const auto outcome = solve_three_zone(sys);
    const auto* u = std::get_if<UniqueCycleCandidate>(&outcome);
    v.require(u != nullptr, g.name + " is not a unique candidate");
    if (!u) continue;
    worst = std::max(worst, testing::max_gap(u->y, g.y));

    const int reps = 1000;
    const auto start = Clock::now();
    for (int i = 0; i < reps; ++i) {
      if (solve_three_zone(sys).index() != 1) v.require(false, "unstable outcome");
    }
    slowest = std::max(slowest, seconds_since(start) / reps);
  }
  v.require(worst <= 1e-10, "ordinate error");
  v.require(slowest < 1e-3, "solve runtime");
  v.detail << "max ordinate error " << worst << ", slowest solve " << slowest * 1e6 << " us";
}

void transversality_products(Verdict& v) {
  const auto cert = certificate("CCC");
  // Printed order: (-1, y2), (-1, y3), (1, y0), (1, y1).
  const double printed[4] = {1.5518, 17.4969, 10.9315, 6.9452};
  const int corner[4] = {2, 3, 0, 1};
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto& c = cert.crossing[corner[k]];
    v.require(c.label == ContactLabel::Crossing, "corner is not a crossing point");
    worst = std::max(worst, std::abs(c.product - printed[k]));
  }
  v.require(worst <= 1e-3, "product mismatch");
  v.detail << "max product error " << worst;
}

void flight_times(Verdict& v) {
  const double root = std::sqrt(295865.0);
  const double t_r = 0.5 * std::atan(20832.0 * root / 25320661.0);
  const double t_l = 0.5 * std::atan(12.0 * root / 7201.0);
  const auto ex1 = certificate("CCC").flight_times();
  const double err = std::max(std::abs(ex1[0] - t_r), std::abs(ex1[2] - t_l));
  v.require(err <= 1e-10, "t_R or t_L");

  double min_time = INFINITY, worst_period = 0.0;
  for (const auto& g : testing::golden_tuples()) {
    const auto sys = fixture(g.name);
    const auto cert = certificate(g.name);
    for (double t : cert.flight_times()) min_time = std::min(min_time, t);
    const double oracle = return_map_with_time(sys, g.y.y0, {1e-9, 100.0}).time;
    worst_period = std::max(worst_period, std::abs(oracle - cert.period));
  }
  v.require(min_time > 0.0, "nonpositive flight time");
  v.require(worst_period <= 1e-6, "period vs oracle");
  v.detail << "t_R/t_L error " << err << ", min flight time " << min_time << ", max period gap " << worst_period;
}

void oracle_fixed_point(Verdict& v) {
  double worst = 0.0, slowest = 0.0;
  for (const auto& g : testing::golden_tuples()) {
    const auto sys = fixture(g.name);
    const auto start = Clock::now();
    double y = NAN;
    try {
      y = fixed_point_near(sys, g.y.y0, {1e-9, 100.0});
    } catch (const std::exception& e) {
      v.require(false, g.name + ": " + e.what());
      continue;
    }
    slowest = std::max(slowest, seconds_since(start));
    worst = std::max(worst, std::abs(y - g.y.y0));
  }
  v.require(worst <= 1e-6, "fixed point error");
  v.require(slowest < 1.0, "oracle runtime");
  v.detail << "max fixed-point error " << worst << ", slowest " << slowest * 1e3 << " ms";
}

void non_existence(Verdict& v) {
  Rng rng(501);
  int candidates = 0;
  for (int i = 0; i < 1000; ++i) {
    candidates += std::holds_alternative<UniqueCycleCandidate>(solve(testing::random_continuous_two_zone(rng)));
    candidates += std::holds_alternative<UniqueCycleCandidate>(solve(testing::random_continuous_three_zone(rng)));
    candidates += std::holds_alternative<UniqueCycleCandidate>(solve(testing::random_discontinuous_two_zone(rng)));
  }
  v.require(candidates == 0, "unique candidate in a system without limit cycles");

  double worst = 0.0;
  int evaluated = 0, unparametrized = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = testing::random_continuous_three_zone(rng);
    const auto outcome = solve_three_zone(s);
    const auto* c = std::get_if<Continuum>(&outcome);
    if (!c || !c->parametrization) {
      ++unparametrized;
      continue;
    }
    for (int k = 0; k < 100; ++k) {
      const auto y = c->parametrization(rng.uniform(-3, 3));
      if (!y) continue;
      ++evaluated;
      worst = std::max(worst, testing::max_abs(residuals_three_zone(s, (*y)[0], (*y)[1], (*y)[2], (*y)[3])));
    }
  }
  v.require(unparametrized == 0, "continuum without parametrization");
  v.require(worst <= 1e-9, "continuum residual");
  v.detail << "3 x 1000 systems, " << candidates << " candidates; " << evaluated
           << " continuum points, max residual " << worst;
}

void at_most_one(Verdict& v) {
  Rng rng(601);
  int multiple = 0, unique = 0, solutions = 0;
  double worst_swap = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto s = testing::random_generic_three_zone(rng);
    const auto alg = three_zone_algebraic_solutions(s);
    int ordered = 0;
    for (const auto& y : alg.solutions) {
      ordered += strictly_ordered(y) ? 1 : 0;
      ++solutions;
      // The swapped tuple must be a root exactly as well as the original is.
      const double scale = testing::tuple_scale(y);
      const double own = testing::max_abs(residuals_three_zone(s, y));
      const double swapped = testing::max_abs(residuals_three_zone(s, y.swapped()));
      worst_swap = std::max(worst_swap, std::abs(swapped - own) / (scale * scale * (1.0 + s.coefficient_scale())));
    }
    multiple += ordered > 1 ? 1 : 0;
    unique += std::holds_alternative<UniqueCycleCandidate>(solve_three_zone(s)) ? 1 : 0;
  }
  v.require(multiple == 0, "two ordered solutions");
  v.require(worst_swap <= 1e-12, "swap symmetry");
  v.detail << "10000 systems, " << unique << " unique, " << multiple << " with two ordered; "
           << solutions << " algebraic solutions, max swap defect " << worst_swap;
}

void numerical_hygiene(Verdict& v) {
  // Energy, relative to max(1, |H|), along every arc of the six example cycles and 1000 random arcs.
  double energy = 0.0;
  for (const auto& g : testing::golden_tuples()) {
    const auto sys = fixture(g.name);
    for (const auto& arc : certificate(g.name).arcs) {
      const auto& f = sys.field(arc.zone);
      const double h0 = hamiltonian_value(f, arc.start);
      for (Point p : orbit_samples(f, arc.start, arc.time, 256)) {
        energy = std::max(energy, std::abs(hamiltonian_value(f, p) - h0) / std::max(1.0, std::abs(h0)));
      }
    }
  }
  Rng rng(701);
  for (int i = 0; i < 1000; ++i) {
    const auto f = testing::random_field(rng);
    const Point p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double h0 = hamiltonian_value(f, p);
    const double h1 = hamiltonian_value(f, flow_closed_form(f, p, rng.uniform(0, 1)));
    energy = std::max(energy, std::abs(h1 - h0) / std::max(1.0, std::abs(h0)));
  }

  double group = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto f = testing::random_field(rng);
    const Point p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double t1 = rng.uniform(0, 1), t2 = rng.uniform(0, 1);
    const Point once = flow_closed_form(f, p, t1 + t2);
    const Point twice = flow_closed_form(f, flow_closed_form(f, p, t1), t2);
    group = std::max(group, norm(once - twice) / std::max(1.0, norm(once)));
  }

  int reachable = 0, attempts = 0;
  double flight = 0.0;
  while (reachable < 1000 && attempts < 100000) {
    ++attempts;
    const auto f = testing::random_field(rng);
    const Point x0{static_cast<double>(rng.integer(-1, 1)), rng.uniform(-3, 3)};
    const double target = rng.integer(-1, 1);
    if (std::abs(vector_field_value(f, x0).x) < 1e-3) continue;
    double t = 0.0;
    try {
      t = flight_time(f, x0, target);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(vector_field_value(f, flow_closed_form(f, x0, t)).x) < 1e-3) continue;  // grazing hit
    ++reachable;
    flight = std::max(flight, std::abs(flight_time_bracketed(f, x0, target, 2.0 * t + 1.0) - t));
  }
  v.require(energy <= 1e-9, "energy");
  v.require(group <= 1e-9, "group property");
  v.require(reachable == 1000, "not enough reachable cases");
  v.require(flight <= 1e-10, "flight times");
  v.detail << "energy " << energy << ", group " << group << ", flight time gap " << flight << " over "
           << reachable << " cases";
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

void end_to_end_cli(Verdict& v) {
  const fs::path dir = fs::temp_directory_path() / "pwlham_acceptance";
  fs::create_directories(dir);
  int runs = 0;
  for (const auto& fx : bundle_examples()) {
    const std::string input = std::string(PWLHAM_FIXTURE_DIR) + "/" + fx.file;
    const std::string stem = (dir / fs::path(fx.file).stem()).string();
    const auto invoke = [&](const std::string& command, const std::string& out) {
      const std::string line = quoted(PWLHAM_CLI_PATH) + " " + command + " --input " + quoted(input) +
                               " --output " + quoted(out) + " 2>/dev/null";
      ++runs;
      const int status = std::system(line.c_str());
      v.require(status == 0, fx.file + " " + command + " exit " + std::to_string(status));
    };
    invoke("solve", stem + ".solve.json");
    invoke("cycle", stem + ".cycle.json");
    invoke("oracle", stem + ".oracle.json");
    invoke("plot", stem + ".a.svg");
    invoke("plot", stem + ".b.svg");
    try {
      const std::string a = read_file(stem + ".a.svg");
      v.require(!a.empty() && a == read_file(stem + ".b.svg"), fx.file + " SVG differs between runs");
    } catch (const std::exception& e) {
      v.require(false, e.what());
    }
  }
  fs::remove_all(dir);
  v.detail << runs << " CLI runs over " << bundle_examples().size() << " fixtures";
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* title;
    std::function<void(Verdict&)> check;
  } criteria[] = {
      {1, "golden corner points", golden_corners},
      {2, "transversality products", transversality_products},
      {3, "flight times and period", flight_times},
      {4, "oracle fixed point", oracle_fixed_point},
      {5, "non-existence properties", non_existence},
      {6, "at most one limit cycle", at_most_one},
      {7, "numerical hygiene", numerical_hygiene},
      {8, "end-to-end CLI", end_to_end_cli},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    v.detail.precision(3);
    const auto start = Clock::now();
    try {
      c.check(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << v.detail.str()
              << " [" << seconds_since(start) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
