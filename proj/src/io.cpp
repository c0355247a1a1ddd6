#include "pwlham/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pwlham {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

double parse_decimal(std::string_view text, std::string_view whole) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    invalid("not a number: '" + std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double number_field(const json& zone, const char* key, const std::string& context) {
  const std::string where = context + "." + key;
  if (!zone.contains(key)) invalid(where + ": missing");
  const json& v = zone.at(key);
  try {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
  invalid(where + ": expected a number or a \"p/q\" string");
}

}  // namespace

double parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  const double num = parse_decimal(trim(s.substr(0, slash)), text);
  const double den = parse_decimal(trim(s.substr(slash + 1)), text);
  if (den == 0.0) invalid("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

PiecewiseSystem system_from_json(const json& doc) {
  if (!doc.is_object()) invalid("system definition must be a JSON object");
  if (!doc.contains("layout") || !doc.at("layout").is_string()) {
    invalid("layout: expected \"two\" or \"three\"");
  }
  const std::string layout_name = doc.at("layout").get<std::string>();
  Layout layout;
  if (layout_name == "two") {
    layout = Layout::TwoZone;
  } else if (layout_name == "three") {
    layout = Layout::ThreeZone;
  } else {
    invalid("layout: expected \"two\" or \"three\", got \"" + layout_name + "\"");
  }
  if (!doc.contains("zones") || !doc.at("zones").is_array()) invalid("zones: expected an array");
  const json& zones = doc.at("zones");
  const std::size_t expected = layout == Layout::TwoZone ? 2 : 3;
  if (zones.size() != expected) {
    invalid("zones: layout \"" + layout_name + "\" needs " + std::to_string(expected) +
            " zones, got " + std::to_string(zones.size()));
  }
  std::vector<LinearHamiltonianField> fields;
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const std::string ctx = "zones[" + std::to_string(i) + "]";
    const json& z = zones[i];
    if (!z.is_object()) invalid(ctx + ": expected an object");
    const double a = number_field(z, "a", ctx);
    const double b = number_field(z, "b", ctx);
    const double c = number_field(z, "c", ctx);
    const double alpha = number_field(z, "alpha", ctx);
    const double beta = number_field(z, "beta", ctx);
    try {
      fields.emplace_back(a, b, c, alpha, beta);
    } catch (const Error& e) {
      throw Error(e.kind(), ctx + ": " + e.what());
    }
  }
  return PiecewiseSystem(layout, std::move(fields));
}

json system_to_json(const PiecewiseSystem& system) {
  json zones = json::array();
  for (const auto& f : system.fields()) {
    zones.push_back({{"a", f.a()}, {"b", f.b()}, {"c", f.c()}, {"alpha", f.alpha()}, {"beta", f.beta()}});
  }
  return {{"layout", to_string(system.layout())}, {"zones", zones}};
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON (" << e.what() << ")";
    invalid(msg.str());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

PiecewiseSystem load_system(const std::string& path) {
  const json doc = parse_json_text(read_file(path), path);
  try {
    return system_from_json(doc);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

json point_to_json(Point p) { return json::array({p.x, p.y}); }

json outcome_to_json(const ClosureOutcome& outcome) {
  json out = {{"outcome", outcome_name(outcome)}, {"branch", outcome_branch(outcome)}};
  if (const auto* u = std::get_if<UniqueCycleCandidate>(&outcome)) {
    out["ordinates"] = {{"y0", u->y.y0}, {"y1", u->y.y1}, {"y2", u->y.y2}, {"y3", u->y.y3}};
  }
  if (const auto* c = std::get_if<Continuum>(&outcome)) {
    out["has_parametrization"] = static_cast<bool>(c->parametrization);
  }
  return out;
}

json certificate_to_json(const CycleCertificate& cert) {
  json corners = json::array();
  for (Point p : cert.corners) corners.push_back(point_to_json(p));
  json crossing = json::array();
  for (const auto& c : cert.crossing) {
    crossing.push_back({{"label", to_string(c.label)},
                        {"left", c.left},
                        {"right", c.right},
                        {"product", c.product}});
  }
  json arcs = json::array();
  for (const auto& a : cert.arcs) {
    arcs.push_back({{"zone", to_string(a.zone)},
                    {"start", point_to_json(a.start)},
                    {"end", point_to_json(a.end)},
                    {"time", a.time}});
  }
  return {
      {"limit_cycle", true},
      {"ordinates",
       {{"y0", cert.ordinates.y0}, {"y1", cert.ordinates.y1}, {"y2", cert.ordinates.y2}, {"y3", cert.ordinates.y3}}},
      {"corners", corners},
      {"crossing", crossing},
      {"arcs", arcs},
      {"flight_times", cert.flight_times()},
      {"orientation", cert.clockwise ? "clockwise" : "counterclockwise"},
      {"period", cert.period},
      {"residual_norm", cert.residual_norm},
      {"samples_per_arc", cert.samples_per_arc},
  };
}

namespace {

Point point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(where + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ZoneId zone_from_name(const std::string& name, const std::string& where) {
  if (name == "L") return ZoneId::L;
  if (name == "C") return ZoneId::C;
  if (name == "R") return ZoneId::R;
  invalid(where + ": unknown zone '" + name + "'");
}

}  // namespace

CycleCertificate certificate_from_json(const json& doc, const PiecewiseSystem& system) {
  try {
    CycleCertificate cert;
    const json& y = doc.at("ordinates");
    cert.ordinates = {y.at("y0").get<double>(), y.at("y1").get<double>(), y.at("y2").get<double>(),
                      y.at("y3").get<double>()};
    const json& corners = doc.at("corners");
    for (std::size_t i = 0; i < corners.size(); ++i) {
      cert.corners.push_back(point_from_json(corners[i], "corners[" + std::to_string(i) + "]"));
    }
    const LineId corner_line[4] = {LineId::SigmaR, LineId::SigmaR, LineId::SigmaL, LineId::SigmaL};
    for (std::size_t k = 0; k < cert.corners.size() && k < 4; ++k) {
      cert.crossing.push_back(classify_boundary_point(system, cert.corners[k], corner_line[k]));
    }
    const json& arcs = doc.at("arcs");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const std::string where = "arcs[" + std::to_string(i) + "]";
      const json& a = arcs[i];
      cert.arcs.push_back({zone_from_name(a.at("zone").get<std::string>(), where),
                           point_from_json(a.at("start"), where + ".start"),
                           point_from_json(a.at("end"), where + ".end"), a.at("time").get<double>()});
    }
    cert.clockwise = doc.at("orientation").get<std::string>() == "clockwise";
    cert.period = doc.at("period").get<double>();
    cert.residual_norm = doc.at("residual_norm").get<double>();
    cert.samples_per_arc = doc.value("samples_per_arc", kDefaultSamplesPerArc);
    for (std::size_t k = 0; k < cert.arcs.size(); ++k) {
      const auto& arc = cert.arcs[k];
      if (!(arc.time > 0.0)) continue;
      auto pts = orbit_samples(system.field(arc.zone), arc.start, arc.time, cert.samples_per_arc);
      cert.polyline.insert(cert.polyline.end(), pts.begin() + (cert.polyline.empty() ? 0 : 1), pts.end());
    }
    return cert;
  } catch (const json::exception& e) {
    invalid(std::string("certificate: ") + e.what());
  }
}

json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"threshold", c.threshold}});
  }
  return {{"checks", checks}, {"passed", report.passed()}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace pwlham
