#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pwlham/model.hpp"

namespace pwlham {

struct Fixture {
  std::string name;  // singularity types L, C, R, e.g. "CCC"
  std::string file;  // file name under fixtures/
  nlohmann::json definition;  // coefficients as exact "p/q" strings
  PiecewiseSystem system;
};

/// The six worked three-zone examples with a unique crossing limit cycle.
std::vector<Fixture> bundle_examples();

/// Looks a fixture up by name (case-insensitive) or file stem ("example1"). Throws InvalidInput.
Fixture find_fixture(const std::string& name);

}  // namespace pwlham
