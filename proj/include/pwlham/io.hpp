#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pwlham/closure.hpp"
#include "pwlham/cycle.hpp"
#include "pwlham/model.hpp"

namespace pwlham {

/// Parses "p/q", an integer, or a decimal literal. Throws Error{InvalidInput}.
double parse_rational(std::string_view text);

/// Builds a system from the definition document
///   { "layout": "two"|"three", "zones": [ {"a":..,"b":..,"c":..,"alpha":..,"beta":..}, .. ] }
/// Errors name the offending field, e.g. "zones[1].alpha".
PiecewiseSystem system_from_json(const nlohmann::json& doc);
nlohmann::json system_to_json(const PiecewiseSystem& system);

/// Parses JSON text; syntax errors report line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& source = "<input>");
PiecewiseSystem load_system(const std::string& path);

nlohmann::json point_to_json(Point p);
nlohmann::json outcome_to_json(const ClosureOutcome& outcome);
nlohmann::json certificate_to_json(const CycleCertificate& cert);
/// Rebuilds the polyline from the stored arcs.
CycleCertificate certificate_from_json(const nlohmann::json& doc, const PiecewiseSystem& system);
nlohmann::json report_to_json(const VerificationReport& report);

/// 2-space indent; object keys come out sorted.
std::string dump(const nlohmann::json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace pwlham
