#include "pwlham/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "pwlham/io.hpp"

namespace pwlham {

namespace {

using Zone = std::array<const char*, 5>;  // a, b, c, alpha, beta

struct Entry {
  const char* name;
  const char* file;
  Zone left, center, right;
};

constexpr Zone kSssLeft = {"-2/3", "4/3", "8/3", "-2/3", "35/3"};
constexpr Zone kSssCenter = {"2/11", "120/11", "4/11", "-41/11", "-4/33"};

const Entry kEntries[] = {
    {"CCC", "example1.json", {"4", "8", "-5/2", "3/2", "11/4"}, {"0", "2", "-2", "2/3", "2/3"},
     {"4", "2", "-10", "-4", "-4"}},
    {"SCC", "example2.json", {"1", "1", "35", "2/3", "214/3"}, {"0", "2", "-2", "2/3", "2/3"},
     {"4", "2", "-10", "-4", "-4"}},
    {"SCS", "example3.json", {"1", "1", "35", "3/5", "357/5"}, {"0", "2", "-2", "1", "1"},
     {"1", "1", "15", "-1", "-31"}},
    {"CSC", "example4.json", {"4", "8", "-5/2", "2", "5/2"}, {"2/5", "24/5", "4/5", "-9/5", "-4/15"},
     {"8", "10", "-8", "-8", "-8"}},
    {"SSS", "example5.json", kSssLeft, kSssCenter, {"-2/11", "4/11", "120/11", "1/5", "-749/55"}},
    {"SSC", "example6.json", kSssLeft, kSssCenter, {"8", "10", "-8", "-7", "-8"}},
};

nlohmann::json zone_json(const Zone& z) {
  return {{"a", z[0]}, {"b", z[1]}, {"c", z[2]}, {"alpha", z[3]}, {"beta", z[4]}};
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

std::vector<Fixture> bundle_examples() {
  std::vector<Fixture> out;
  for (const Entry& e : kEntries) {
    nlohmann::json doc = {{"name", e.name},
                          {"layout", "three"},
                          {"zones", {zone_json(e.left), zone_json(e.center), zone_json(e.right)}}};
    PiecewiseSystem system = system_from_json(doc);
    out.push_back({e.name, e.file, std::move(doc), std::move(system)});
  }
  return out;
}

Fixture find_fixture(const std::string& name) {
  const std::string key = lower(name);
  for (auto& f : bundle_examples()) {
    if (lower(f.name) == key || lower(f.file) == key || lower(f.file.substr(0, f.file.find('.'))) == key) {
      return f;
    }
  }
  throw Error(ErrorKind::InvalidInput, "unknown example '" + name + "' (expected CCC, SCC, SCS, CSC, SSS or SSC)");
}

}  // namespace pwlham
