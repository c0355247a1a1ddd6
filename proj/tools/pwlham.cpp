#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pwlham/cli.hpp"
#include "pwlham/io.hpp"

namespace {

pwlham::Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw pwlham::Error(pwlham::ErrorKind::InvalidInput, "--start expects x,y");
  return {pwlham::parse_rational(text.substr(0, comma)), pwlham::parse_rational(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossing limit cycles of planar piecewise linear Hamiltonian systems"};
  app.require_subcommand(1, 1);

  std::string input, example, output, window, start, certificate, trajectory;
  double tol = 1e-9;
  double t_max = 100.0;
  int samples = pwlham::kDefaultSamplesPerArc;

  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"classify", "Singular point type of each zone and the continuity report"},
      {"solve", "Solve the closure equations"},
      {"cycle", "Certificate of the crossing limit cycle, or a no-cycle report"},
      {"oracle", "Compare the analytic cycle with a numerical return-map fixed point"},
      {"plot", "SVG phase portrait of the cycle (or of a trajectory with --start)"},
      {"verify", "Re-check a certificate against the system"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--input,-i", input, "System definition JSON");
    sub->add_option("--example,-e", example, "Bundled example: CCC, SCC, SCS, CSC, SSS, SSC");
    sub->add_option("--output,-o", output, "Write the result here instead of stdout");
    sub->add_option("--samples", samples, "Samples per cycle arc")->check(CLI::Range(2, 1000000));
    sub->add_option("--window", window, "Plot window x0,x1,y0,y1");
    sub->add_option("--tol", tol, "Oracle integrator tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--t-max", t_max, "Integration horizon")->check(CLI::PositiveNumber);
    if (std::string(c.name) == "plot") sub->add_option("--start", start, "Trajectory start x,y");
    if (std::string(c.name) == "verify") sub->add_option("--certificate", certificate, "Certificate JSON");
    if (std::string(c.name) == "oracle") sub->add_option("--trajectory", trajectory, "CSV of the oracle orbit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pwlham::kExitInputError;
  }

  pwlham::RunConfig config;
  try {
    config.command = pwlham::parse_command(app.get_subcommands().front()->get_name());
    if (!window.empty()) config.window = pwlham::parse_window(window);
    if (!start.empty()) config.start = parse_point(start);
  } catch (const pwlham::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pwlham::kExitInputError;
  }
  config.input = input;
  config.example = example;
  config.output = output;
  config.tol = tol;
  config.t_max = t_max;
  config.samples = samples;
  config.certificate = certificate;
  config.trajectory = trajectory;
  return pwlham::run(config, std::cout, std::cerr);
}
