#include "pwlham/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "pwlham/fixtures.hpp"
#include "pwlham/io.hpp"
#include "pwlham/poincare.hpp"

namespace pwlham {

using nlohmann::json;

Command parse_command(const std::string& name) {
  if (name == "classify") return Command::Classify;
  if (name == "solve") return Command::Solve;
  if (name == "cycle") return Command::Cycle;
  if (name == "oracle") return Command::Oracle;
  if (name == "plot") return Command::Plot;
  if (name == "verify") return Command::Verify;
  throw Error(ErrorKind::InvalidInput, "unknown command '" + name + "'");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::Classify: return "classify";
    case Command::Solve: return "solve";
    case Command::Cycle: return "cycle";
    case Command::Oracle: return "oracle";
    case Command::Plot: return "plot";
    case Command::Verify: return "verify";
  }
  return "?";
}

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PiecewiseSystem load_input(const RunConfig& config) {
  if (!config.input.empty() && !config.example.empty()) {
    throw InputError("give either --input or --example, not both");
  }
  try {
    if (!config.input.empty()) return load_system(config.input);
    if (!config.example.empty()) return find_fixture(config.example).system;
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  throw InputError("no system given (use --input FILE or --example NAME)");
}

void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output.empty()) {
    out << text;
  } else {
    write_file(config.output, text);
  }
}

json no_cycle_report(const CycleSearch& search) {
  json report = outcome_to_json(search.outcome);
  report["limit_cycle"] = false;
  report["diagnostic"] = search.diagnostic;
  return report;
}

int do_classify(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out) {
  json zones = json::array();
  for (const auto& zs : singular_points_in_zone(system)) {
    zones.push_back({{"zone", to_string(zs.zone)},
                     {"type", zs.singularity.kind == SingularType::Center ? "center" : "saddle"},
                     {"modulus", zs.singularity.modulus},
                     {"singular_point", point_to_json(zs.singularity.location)},
                     {"in_zone", zs.in_zone}});
  }
  const auto continuity = is_continuous(system);
  json report = {{"layout", to_string(system.layout())},
                 {"zones", zones},
                 {"continuous", continuity.continuous},
                 {"continuity_violations", continuity.violations}};
  emit(config, out, dump(report));
  return kExitOk;
}

int do_solve(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out) {
  const auto outcome = solve(system);
  json report = outcome_to_json(outcome);
  if (const auto* u = std::get_if<UniqueCycleCandidate>(&outcome)) {
    report["residuals"] = residuals_three_zone(system, u->y);
  }
  report["layout"] = to_string(system.layout());
  emit(config, out, dump(report));
  return kExitOk;
}

int do_cycle(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out) {
  const auto search = find_limit_cycle(system, config.samples);
  emit(config, out, dump(search.certificate ? certificate_to_json(*search.certificate) : no_cycle_report(search)));
  return kExitOk;
}

// Ordinate where the cycle enters the right zone through x = 1.
double entry_ordinate(const CycleCertificate& cert) {
  return cert.clockwise ? cert.ordinates.y0 : cert.ordinates.y1;
}

int do_oracle(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  const auto search = find_limit_cycle(system, config.samples);
  if (!search.certificate) {
    emit(config, out, dump(no_cycle_report(search)));
    return kExitOk;
  }
  const auto& cert = *search.certificate;
  const OracleOptions options{config.tol, config.t_max};
  const double y_star = entry_ordinate(cert);

  double y_fixed = 0.0;
  try {
    y_fixed = fixed_point_near(system, y_star, options);
  } catch (const Error& e) {
    err << "oracle: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  const auto ret = return_map_with_time(system, y_fixed, options);
  const double dy = std::abs(y_fixed - y_star);
  const double dt = std::abs(ret.time - cert.period);
  const bool agrees = dy <= config.oracle_agreement && dt <= config.oracle_agreement;
  json report = {{"limit_cycle", true},
                 {"analytic_entry_ordinate", y_star},
                 {"oracle_entry_ordinate", y_fixed},
                 {"ordinate_difference", dy},
                 {"analytic_period", cert.period},
                 {"oracle_return_time", ret.time},
                 {"period_difference", dt},
                 {"tol", config.tol},
                 {"agreement_threshold", config.oracle_agreement},
                 {"agrees", agrees}};
  emit(config, out, dump(report));

  if (!config.trajectory.empty()) {
    const double s = section_abscissa(system);
    const auto traj = integrate_numeric(system, {s, y_fixed}, ret.time, config.tol);
    std::ostringstream csv;
    write_trajectory_csv(traj, csv);
    write_file(config.trajectory, csv.str());
  }
  return agrees ? kExitOk : kExitVerificationFailed;
}

int do_plot(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out,
            std::ostream& err) {
  std::string svg;
  if (config.start) {
    const auto traj = integrate_numeric(system, *config.start, config.t_max, config.tol);
    std::vector<Point> pts;
    for (const auto& s : traj.states) pts.push_back(s.point);
    svg = render_trajectory_svg(system, pts, config.window);
  } else {
    const auto search = find_limit_cycle(system, config.samples);
    if (!search.certificate) {
      err << "plot: " << search.diagnostic << "; pass --start x,y to draw a trajectory instead\n";
      return kExitInputError;
    }
    svg = render_cycle_svg(system, *search.certificate, config.window);
  }
  emit(config, out, svg);
  return kExitOk;
}

int do_verify(const PiecewiseSystem& system, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  CycleCertificate cert;
  if (config.certificate.empty()) {
    const auto search = find_limit_cycle(system, config.samples);
    if (!search.certificate) {
      emit(config, out, dump(no_cycle_report(search)));
      return kExitOk;
    }
    cert = *search.certificate;
  } else {
    json doc;
    try {
      doc = parse_json_text(read_file(config.certificate), config.certificate);
      if (doc.is_object() && doc.value("limit_cycle", true) == false) {
        err << "verify: " << config.certificate << " records no limit cycle\n";
        return kExitVerificationFailed;
      }
      cert = certificate_from_json(doc, system);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInput) throw InputError(e.what());
      throw;
    }
  }
  const auto report = verify_certificate(cert, system);
  emit(config, out, dump(report_to_json(report)));
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.tol > 0.0) || !(config.t_max > 0.0) || !(config.oracle_agreement > 0.0)) {
      throw InputError("tolerances and t_max must be positive");
    }
    if (config.samples < 2) throw InputError("--samples must be at least 2");
    const PiecewiseSystem system = load_input(config);
    switch (config.command) {
      case Command::Classify: return do_classify(system, config, out);
      case Command::Solve: return do_solve(system, config, out);
      case Command::Cycle: return do_cycle(system, config, out);
      case Command::Oracle: return do_oracle(system, config, out, err);
      case Command::Plot: return do_plot(system, config, out, err);
      case Command::Verify: return do_verify(system, config, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::InvalidInput ? kExitInputError : kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return kExitInputError;
}

}  // namespace pwlham
