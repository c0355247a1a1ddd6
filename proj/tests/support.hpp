#pragma once

// Shared helpers for the unit and acceptance tests: seeded generators for
// random systems and the closed-form golden tuples of the bundled examples.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pwlham/closure.hpp"
#include "pwlham/model.hpp"

namespace testing {

using namespace pwlham;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  // Uniform in [-hi, -lo] U [lo, hi].
  double away_from_zero(double lo, double hi) {
    const double v = uniform(lo, hi);
    return coin() ? v : -v;
  }

  bool coin() { return std::bernoulli_distribution(0.5)(engine_); }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

inline constexpr double kRange = 3.0;
// Random fields keep |a^2 + bc| at least this large, so flows stay well conditioned.
inline constexpr double kMinDiscriminant = 0.05;

inline bool usable(double a, double b, double c) { return std::abs(a * a + b * c) >= kMinDiscriminant; }

inline LinearHamiltonianField random_field(Rng& rng, double min_abs_b = 0.0) {
  while (true) {
    const double a = rng.uniform(-kRange, kRange);
    const double b = min_abs_b > 0.0 ? rng.away_from_zero(min_abs_b, kRange) : rng.uniform(-kRange, kRange);
    const double c = rng.uniform(-kRange, kRange);
    if (!usable(a, b, c)) continue;
    return {a, b, c, rng.uniform(-kRange, kRange), rng.uniform(-kRange, kRange)};
  }
}

inline LinearHamiltonianField random_center(Rng& rng) {
  while (true) {
    auto f = random_field(rng);
    if (f.discriminant() < 0.0) return f;
  }
}

inline LinearHamiltonianField random_saddle(Rng& rng) {
  while (true) {
    auto f = random_field(rng);
    if (f.discriminant() > 0.0) return f;
  }
}

// a, b, alpha shared; c free per zone; beta fixed by continuity at x = 0.
inline PiecewiseSystem random_continuous_two_zone(Rng& rng) {
  while (true) {
    const double a = rng.uniform(-kRange, kRange);
    const double b = rng.uniform(-kRange, kRange);
    const double cl = rng.uniform(-kRange, kRange);
    const double cr = rng.uniform(-kRange, kRange);
    if (!usable(a, b, cl) || !usable(a, b, cr)) continue;
    const double alpha = rng.uniform(-kRange, kRange);
    const double beta = rng.uniform(-kRange, kRange);
    return PiecewiseSystem::two_zone({a, b, cl, alpha, beta}, {a, b, cr, alpha, beta});
  }
}

inline PiecewiseSystem random_continuous_three_zone(Rng& rng, bool zero_b = false) {
  while (true) {
    const double a = rng.uniform(-kRange, kRange);
    const double b = zero_b ? 0.0 : rng.away_from_zero(0.1, kRange);
    const double cl = rng.uniform(-kRange, kRange);
    const double cc = rng.uniform(-kRange, kRange);
    const double cr = rng.uniform(-kRange, kRange);
    if (!usable(a, b, cl) || !usable(a, b, cc) || !usable(a, b, cr)) continue;
    const double alpha = rng.uniform(-kRange, kRange);
    const double beta_c = rng.uniform(-kRange, kRange);
    const double beta_r = beta_c + cc - cr;
    const double beta_l = beta_c + cl - cc;
    return PiecewiseSystem::three_zone({a, b, cl, alpha, beta_l}, {a, b, cc, alpha, beta_c},
                                       {a, b, cr, alpha, beta_r});
  }
}

inline PiecewiseSystem random_discontinuous_two_zone(Rng& rng) {
  while (true) {
    auto s = PiecewiseSystem::two_zone(random_field(rng), random_field(rng));
    if (!is_continuous(s).continuous) return s;
  }
}

// Generic branch: every b bounded away from zero.
inline PiecewiseSystem random_generic_three_zone(Rng& rng) {
  while (true) {
    auto s = PiecewiseSystem::three_zone(random_field(rng, 0.1), random_field(rng, 0.1), random_field(rng, 0.1));
    if (!is_continuous(s).continuous) return s;
  }
}

struct Golden {
  std::string name;
  CornerOrdinates y;
};

// Closed-form corner ordinates of the six worked examples.
inline std::vector<Golden> golden_tuples() {
  const double s1 = std::sqrt(1259.0 / 235.0);
  const double s2 = std::sqrt(5.0);
  const double s3 = std::sqrt(2.0 / 7.0);
  const double s4 = std::sqrt(7.0 / 3.0);
  const double s5 = 43.0 * std::sqrt(26.0);
  const double s6 = std::sqrt(13.0 / 2.0);
  const double s7 = std::sqrt(43.0 / 470.0);
  return {
      {"CCC", {31.0 / 48.0 * s1, -31.0 / 48.0 * s1, 5.0 / 16.0 - s1 / 3.0, 5.0 / 16.0 + s1 / 3.0}},
      {"SCC", {2.0 * s2 / 3.0, -2.0 * s2 / 3.0, (1.0 - s2) / 3.0, (1.0 + s2) / 3.0}},
      {"SCS", {18.0 / 5.0 * s3, -18.0 / 5.0 * s3, 2.0 / 5.0 - 2.0 * s3, 2.0 / 5.0 + 2.0 * s3}},
      {"CSC", {5.0 / 12.0 * s4, -5.0 / 12.0 * s4, 0.25 - 7.0 * std::sqrt(21.0) / 36.0, 0.25 + 7.0 * std::sqrt(21.0) / 36.0}},
      {"SSS", {(s5 - 12.0) / 240.0, -(s5 + 12.0) / 240.0, -3.0 / 8.0 * s6, 3.0 / 8.0 * s6}},
      {"SSC", {43.0 / 24.0 * s7 - 0.1, -43.0 / 24.0 * s7 - 0.1, -17.0 / 8.0 * s7, 17.0 / 8.0 * s7}},
  };
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double max_gap(const CornerOrdinates& u, const CornerOrdinates& v) {
  return std::max({std::abs(u.y0 - v.y0), std::abs(u.y1 - v.y1), std::abs(u.y2 - v.y2), std::abs(u.y3 - v.y3)});
}

inline double tuple_scale(const CornerOrdinates& y) {
  return std::max({1.0, std::abs(y.y0), std::abs(y.y1), std::abs(y.y2), std::abs(y.y3)});
}

}  // namespace testing
