#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qaecon/errors.hpp"

namespace qaecon {

// Document classes are plain names (requirements, design, code, test-spec).
using DocumentClass = std::string;

enum class CurveForm { Constant, Linear, Exponential };

// Probability that an application of a technique does NOT detect a fault,
// as a function of the effort spent on the application. Non-increasing in
// effort and clamped to [floor, theta0]. The constant form ignores rate and
// floor.
struct DifficultyCurve {
  CurveForm form = CurveForm::Constant;
  double theta0 = 1.0;
  double floor = 0.0;
  double rate = 0.0;

  // Factories validate their parameters; raw aggregate construction does not
  // (validate_scenario reports malformed curves instead of throwing).
  static DifficultyCurve constant(double theta0);
  static DifficultyCurve linear(double theta0, double floor, double rate);
  static DifficultyCurve exponential(double theta0, double floor, double rate);

  // True when the curve evaluates to 1 for every effort value, i.e. the
  // technique can never detect the fault.
  bool identically_one() const;

  // Empty string when well-formed, otherwise a description of the problem.
  std::string check() const;
};

// Difficulty at the given effort. Negative effort is a domain error.
double eval_difficulty(const DifficultyCurve& curve, double effort);

// One potential fault of the product under development.
struct FaultSpec {
  std::string id;
  DocumentClass doc_class;
  double pi = 0.0;        // probability an escaped fault fails in the field
  double v_field = 0.0;   // removal cost when fixed in the field
  double f_effect = 0.0;  // effect cost of a field failure (support, compensation)
  std::vector<std::string> predecessors;  // direct predecessors only

  double field_cost() const { return v_field + f_effect; }
};

// One ordered application of a defect-detection technique.
struct TechniqueApplication {
  std::string id;
  double setup_cost = 0.0;  // fixed, effort-independent
  double exec_rate = 0.0;   // execution cost per effort unit
  double effort = 0.0;
  std::map<std::string, DifficultyCurve> difficulty;  // fault id -> curve
  std::map<std::string, double> removal_cost;         // fault id -> in-house cost
  std::set<DocumentClass> applicable_classes;         // empty = applies to all

  bool applies_to(const DocumentClass& doc_class) const;

  // Effective difficulty for `fault` at this application's effort. Faults
  // outside the applicable classes, and faults without a curve entry, are
  // undetectable (theta == 1).
  double difficulty_for(const FaultSpec& fault) const;

  // In-house removal cost charged when this application detects the fault;
  // 0 when no entry exists.
  double removal_cost_for(const std::string& fault_id) const;
};

// An ordered quality-assurance plan over a fixed fault population.
struct Scenario {
  std::vector<FaultSpec> faults;
  std::vector<TechniqueApplication> applications;  // order is significant
  std::string currency_unit = "unit";
  std::string effort_unit = "staff-hour";

  const FaultSpec& fault(const std::string& id) const;
  const TechniqueApplication& application(const std::string& id) const;
  std::size_t fault_index(const std::string& id) const;
  std::size_t application_index(const std::string& id) const;
};

// Exhaustive decomposition of what can happen to one fault under a plan:
// detected first-hand by some application, resolved because a predecessor
// was detected first, or never caught at all.
struct FaultEventProbabilities {
  std::string fault_id;
  std::vector<std::pair<std::string, double>> detected_by;  // application order
  double predecessor_first = 0.0;
  double escape = 1.0;

  double detection_total() const;
  double detected_by_application(const std::string& application_id) const;
};

// Theta(x, R_i): probability that neither fault i nor any of its direct
// predecessors was detected by the applications strictly before x.
double non_detection_prior(const Scenario& scenario, const std::string& application_id,
                           const std::string& fault_id);

FaultEventProbabilities fault_event_probabilities(const Scenario& scenario,
                                                  const std::string& fault_id);
std::vector<FaultEventProbabilities> all_fault_event_probabilities(const Scenario& scenario);

struct ValidationIssue {
  std::string code;     // stable machine-readable tag
  std::string subject;  // offending fault/application id
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const;
  std::string to_string() const;
};

// Never throws; problems are the payload.
ValidationReport validate_scenario(const Scenario& scenario);

// Throws validation_error when validate_scenario reports issues.
void require_valid(const Scenario& scenario);

}  // namespace qaecon
