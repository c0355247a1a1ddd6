#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pwlham/svg.hpp"

namespace pwlham {

enum class Command { Classify, Solve, Cycle, Oracle, Plot, Verify };

/// Throws InvalidInput for an unknown name.
Command parse_command(const std::string& name);
const char* to_string(Command command);

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::Solve;
  std::string input;    // system definition file
  std::string example;  // bundled fixture name, used when input is empty
  std::string output;   // empty: write to the output stream
  double tol = 1e-9;    // oracle integrator tolerance
  double oracle_agreement = 1e-6;
  double t_max = 100.0;
  int samples = kDefaultSamplesPerArc;
  std::optional<Window> window;
  std::optional<Point> start;    // plot: trajectory start when there is no cycle
  std::string certificate;       // verify: certificate JSON to check
  std::string trajectory;        // oracle: optional CSV of the fixed-point orbit
};

/// Executes one command. Exit 0 on success (including "no limit cycle"),
/// 1 on verification or oracle mismatch, 2 on input errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace pwlham
