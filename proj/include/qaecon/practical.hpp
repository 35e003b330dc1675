#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qaecon/model.hpp"

namespace qaecon {

// A class of defects sharing detection difficulty, removal cost, and failure
// probability. Counts are expected values from older projects and may be
// fractional.
struct DefectType {
  std::string name;
  DocumentClass doc_class;
  double expected_count = 0.0;
  double pi = 0.0;
  double v_field = 0.0;
  double f_effect = 0.0;
  std::map<std::string, double> removal_cost;         // technique id -> cost
  std::map<std::string, DifficultyCurve> difficulty;  // technique id -> curve
};

// Application descriptor for the type-based model: no per-fault maps, those
// come from the defect types.
struct PracticalApplication {
  std::string id;
  double setup_cost = 0.0;
  double exec_rate = 0.0;
  double effort = 0.0;
  std::set<DocumentClass> applicable_classes;
};

// Simplified plan: defect types instead of individual faults, no propagation.
struct PracticalScenario {
  std::vector<DefectType> types;
  std::vector<PracticalApplication> applications;
  std::string currency_unit = "unit";
  std::string effort_unit = "staff-hour";
};

// Realizes the type-based model by expansion: each type becomes one
// representative fault whose cost terms (field, effect, removal) are scaled
// by the expected count. Probabilities are untouched, predecessors are empty,
// and all downstream math runs through the one combined-equation path.
// Throws lookup_error when a type references an unknown technique.
Scenario expand_to_scenario(const PracticalScenario& practical);

// First approximation: theta = 1 - effectiveness. Both on the [0,1] scale.
double difficulty_from_effectiveness(double effectiveness);

// 1 - E_p(theta): effectiveness as the mean detection probability under the
// fault-presence distribution `weights` (non-negative, summing to 1).
double effectiveness_from_difficulty(std::span<const double> thetas,
                                     std::span<const double> weights);

}  // namespace qaecon
