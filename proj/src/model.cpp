#include "qaecon/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qaecon {

namespace {

bool probability_ok(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

DifficultyCurve DifficultyCurve::constant(double theta0) {
  if (!probability_ok(theta0)) throw std::domain_error("constant curve: theta0 outside [0,1]");
  return DifficultyCurve{CurveForm::Constant, theta0, theta0, 0.0};
}

DifficultyCurve DifficultyCurve::linear(double theta0, double floor, double rate) {
  DifficultyCurve c{CurveForm::Linear, theta0, floor, rate};
  if (auto problem = c.check(); !problem.empty()) throw std::domain_error("linear curve: " + problem);
  return c;
}

DifficultyCurve DifficultyCurve::exponential(double theta0, double floor, double rate) {
  DifficultyCurve c{CurveForm::Exponential, theta0, floor, rate};
  if (auto problem = c.check(); !problem.empty())
    throw std::domain_error("exponential curve: " + problem);
  return c;
}

bool DifficultyCurve::identically_one() const {
  if (theta0 != 1.0) return false;
  if (form == CurveForm::Constant) return true;
  return rate == 0.0 || floor == 1.0;
}

std::string DifficultyCurve::check() const {
  if (!probability_ok(theta0)) return "theta0 outside [0,1]";
  if (form == CurveForm::Constant) return {};
  if (!probability_ok(floor)) return "floor outside [0,1]";
  if (floor > theta0) return "floor exceeds theta0";
  if (!(rate >= 0.0) || !std::isfinite(rate)) return "negative rate";
  return {};
}

double eval_difficulty(const DifficultyCurve& curve, double effort) {
  if (!(effort >= 0.0)) throw std::domain_error("eval_difficulty: negative effort");
  switch (curve.form) {
    case CurveForm::Constant:
      return curve.theta0;
    case CurveForm::Linear:
      return std::max(curve.floor, curve.theta0 - curve.rate * effort);
    case CurveForm::Exponential:
      return curve.floor + (curve.theta0 - curve.floor) * std::exp(-curve.rate * effort);
  }
  throw std::logic_error("eval_difficulty: unknown curve form");
}

bool TechniqueApplication::applies_to(const DocumentClass& doc_class) const {
  return applicable_classes.empty() || applicable_classes.count(doc_class) > 0;
}

double TechniqueApplication::difficulty_for(const FaultSpec& fault) const {
  if (!applies_to(fault.doc_class)) return 1.0;
  auto it = difficulty.find(fault.id);
  if (it == difficulty.end()) return 1.0;
  return eval_difficulty(it->second, effort);
}

double TechniqueApplication::removal_cost_for(const std::string& fault_id) const {
  auto it = removal_cost.find(fault_id);
  return it == removal_cost.end() ? 0.0 : it->second;
}

const FaultSpec& Scenario::fault(const std::string& id) const {
  return faults[fault_index(id)];
}

const TechniqueApplication& Scenario::application(const std::string& id) const {
  return applications[application_index(id)];
}

std::size_t Scenario::fault_index(const std::string& id) const {
  for (std::size_t k = 0; k < faults.size(); ++k)
    if (faults[k].id == id) return k;
  throw lookup_error("unknown fault id: " + id);
}

std::size_t Scenario::application_index(const std::string& id) const {
  for (std::size_t k = 0; k < applications.size(); ++k)
    if (applications[k].id == id) return k;
  throw lookup_error("unknown application id: " + id);
}

double FaultEventProbabilities::detection_total() const {
  double sum = 0.0;
  for (const auto& [_, p] : detected_by) sum += p;
  return sum;
}

double FaultEventProbabilities::detected_by_application(const std::string& application_id) const {
  for (const auto& [id, p] : detected_by)
    if (id == application_id) return p;
  throw lookup_error("unknown application id: " + application_id);
}

double non_detection_prior(const Scenario& scenario, const std::string& application_id,
                           const std::string& fault_id) {
  const std::size_t stop = scenario.application_index(application_id);
  const FaultSpec& fault = scenario.fault(fault_id);

  double prior = 1.0;
  for (std::size_t x = 0; x < stop; ++x) {
    const TechniqueApplication& app = scenario.applications[x];
    prior *= app.difficulty_for(fault);
    for (const std::string& pred_id : fault.predecessors)
      prior *= app.difficulty_for(scenario.fault(pred_id));
  }
  return prior;
}

FaultEventProbabilities fault_event_probabilities(const Scenario& scenario,
                                                  const std::string& fault_id) {
  const FaultSpec& fault = scenario.fault(fault_id);

  FaultEventProbabilities events;
  events.fault_id = fault_id;
  events.detected_by.reserve(scenario.applications.size());

  // Walks the plan once, keeping the running probability that the chain is
  // still unresolved. Within one application the fault's own detection takes
  // precedence over a simultaneous predecessor detection, so the partition
  // telescopes exactly.
  double prior = 1.0;
  for (const TechniqueApplication& app : scenario.applications) {
    const double theta_own = app.difficulty_for(fault);
    double theta_preds = 1.0;
    for (const std::string& pred_id : fault.predecessors)
      theta_preds *= app.difficulty_for(scenario.fault(pred_id));

    events.detected_by.emplace_back(app.id, (1.0 - theta_own) * prior);
    events.predecessor_first += prior * theta_own * (1.0 - theta_preds);
    prior *= theta_own * theta_preds;
  }
  events.escape = prior;
  return events;
}

std::vector<FaultEventProbabilities> all_fault_event_probabilities(const Scenario& scenario) {
  std::vector<FaultEventProbabilities> out;
  out.reserve(scenario.faults.size());
  for (const FaultSpec& fault : scenario.faults)
    out.push_back(fault_event_probabilities(scenario, fault.id));
  return out;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& v) { return v.code == code; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const ValidationIssue& v : issues)
    out << v.code << " (" << v.subject << "): " << v.message << "\n";
  return out.str();
}

namespace {

// Depth-first cycle search over the predecessor relation.
bool has_cycle(const std::unordered_map<std::string, const FaultSpec*>& by_id) {
  enum class Mark { White, Grey, Black };
  std::unordered_map<std::string, Mark> mark;
  for (const auto& [id, _] : by_id) mark[id] = Mark::White;

  std::vector<std::pair<const FaultSpec*, std::size_t>> stack;
  for (const auto& [id, root] : by_id) {
    if (mark[id] != Mark::White) continue;
    stack.assign(1, {root, 0});
    mark[id] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next >= node->predecessors.size()) {
        mark[node->id] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const std::string& pred_id = node->predecessors[next++];
      auto it = by_id.find(pred_id);
      if (it == by_id.end()) continue;  // dangling ids reported separately
      Mark& m = mark[pred_id];
      if (m == Mark::Grey) return true;
      if (m == Mark::White) {
        m = Mark::Grey;
        stack.push_back({it->second, 0});
      }
    }
  }
  return false;
}

}  // namespace

ValidationReport validate_scenario(const Scenario& scenario) {
  ValidationReport report;
  auto add = [&](std::string code, std::string subject, std::string message) {
    report.issues.push_back({std::move(code), std::move(subject), std::move(message)});
  };

  std::unordered_map<std::string, const FaultSpec*> fault_by_id;
  for (const FaultSpec& f : scenario.faults) {
    if (f.id.empty()) add("empty_id", "<fault>", "fault with empty id");
    if (!fault_by_id.emplace(f.id, &f).second)
      add("duplicate_id", f.id, "duplicate fault id");
    if (!probability_ok(f.pi))
      add("probability_out_of_range", f.id, "failure probability outside [0,1]");
    if (!(f.v_field >= 0.0) || !std::isfinite(f.v_field))
      add("negative_cost", f.id, "field removal cost must be >= 0");
    if (!(f.f_effect >= 0.0) || !std::isfinite(f.f_effect))
      add("negative_cost", f.id, "effect cost must be >= 0");
    if (f.doc_class.empty()) add("empty_id", f.id, "fault with empty document class");
    for (const std::string& pred_id : f.predecessors) {
      if (pred_id == f.id)
        add("propagation_cycle", f.id, "fault lists itself as predecessor");
      else if (std::none_of(scenario.faults.begin(), scenario.faults.end(),
                            [&](const FaultSpec& g) { return g.id == pred_id; }))
        add("dangling_predecessor", f.id, "unknown predecessor id: " + pred_id);
    }
  }

  if (!report.has("propagation_cycle") && has_cycle(fault_by_id))
    add("propagation_cycle", "<scenario>", "predecessor relation contains a cycle");

  std::unordered_set<std::string> app_ids;
  for (const TechniqueApplication& app : scenario.applications) {
    if (app.id.empty()) add("empty_id", "<application>", "application with empty id");
    if (!app_ids.insert(app.id).second) add("duplicate_id", app.id, "duplicate application id");
    if (!(app.setup_cost >= 0.0) || !std::isfinite(app.setup_cost))
      add("negative_cost", app.id, "setup cost must be >= 0");
    if (!(app.exec_rate >= 0.0) || !std::isfinite(app.exec_rate))
      add("negative_cost", app.id, "execution cost rate must be >= 0");
    if (!(app.effort >= 0.0) || !std::isfinite(app.effort))
      add("negative_effort", app.id, "effort must be >= 0");

    for (const auto& [fault_id, curve] : app.difficulty) {
      auto it = fault_by_id.find(fault_id);
      if (it == fault_by_id.end()) {
        add("unknown_fault_reference", app.id, "difficulty entry for unknown fault: " + fault_id);
        continue;
      }
      if (auto problem = curve.check(); !problem.empty())
        add("curve_invalid", app.id, "difficulty curve for " + fault_id + ": " + problem);
      else if (!app.applies_to(it->second->doc_class) && !curve.identically_one())
        add("inapplicable_class_difficulty", app.id,
            "fault " + fault_id + " is outside the applicable document classes but has a "
            "difficulty curve below 1");
    }
    for (const auto& [fault_id, cost] : app.removal_cost) {
      if (fault_by_id.find(fault_id) == fault_by_id.end())
        add("unknown_fault_reference", app.id, "removal cost entry for unknown fault: " + fault_id);
      if (!(cost >= 0.0) || !std::isfinite(cost))
        add("negative_cost", app.id, "removal cost for " + fault_id + " must be >= 0");
    }
  }

  return report;
}

void require_valid(const Scenario& scenario) {
  ValidationReport report = validate_scenario(scenario);
  if (!report.ok()) throw validation_error("invalid scenario:\n" + report.to_string());
}

}  // namespace qaecon
