#pragma once

#include <stdexcept>
#include <string>

#include "qaecon/model.hpp"
#include "qaecon/practical.hpp"

namespace qaecon {

// Malformed scenario file: JSON syntax (reported with line/column) or schema
// shape (reported with the offending field path). Distinct from
// validation_error, which covers model-level rule violations in a file that
// parsed fine.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct LoadedScenario {
  Scenario scenario;
  bool from_defect_types = false;  // file used the type-based form, expanded on load
};

// Accepts either the fault-based form (top-level "faults") or the type-based
// form ("defect_types"), exactly one of the two. The type-based form is
// expanded to a fault-based scenario on load.
LoadedScenario parse_scenario_json(const std::string& text, const std::string& origin);
LoadedScenario load_scenario_file(const std::string& path);

std::string scenario_to_json(const Scenario& scenario);

}  // namespace qaecon
