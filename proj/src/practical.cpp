#include "qaecon/practical.hpp"

#include <algorithm>
#include <cmath>

namespace qaecon {

Scenario expand_to_scenario(const PracticalScenario& practical) {
  Scenario scenario;
  scenario.currency_unit = practical.currency_unit;
  scenario.effort_unit = practical.effort_unit;

  scenario.applications.reserve(practical.applications.size());
  for (const PracticalApplication& app : practical.applications) {
    TechniqueApplication expanded;
    expanded.id = app.id;
    expanded.setup_cost = app.setup_cost;
    expanded.exec_rate = app.exec_rate;
    expanded.effort = app.effort;
    expanded.applicable_classes = app.applicable_classes;
    scenario.applications.push_back(std::move(expanded));
  }

  auto application_of = [&](const std::string& technique_id,
                            const std::string& type_name) -> TechniqueApplication& {
    for (TechniqueApplication& app : scenario.applications)
      if (app.id == technique_id) return app;
    throw lookup_error("defect type " + type_name + " references unknown technique: " +
                       technique_id);
  };

  scenario.faults.reserve(practical.types.size());
  for (const DefectType& type : practical.types) {
    FaultSpec fault;
    fault.id = type.name;
    fault.doc_class = type.doc_class;
    fault.pi = type.pi;
    fault.v_field = type.expected_count * type.v_field;
    fault.f_effect = type.expected_count * type.f_effect;
    scenario.faults.push_back(std::move(fault));

    for (const auto& [technique_id, curve] : type.difficulty) {
      // The type-based model assumes linear difficulty; a constant curve is
      // the degenerate rate-0 case.
      if (curve.form == CurveForm::Exponential)
        throw std::domain_error("defect type " + type.name +
                                ": difficulty curves must use the linear (or constant) form");
      application_of(technique_id, type.name).difficulty[type.name] = curve;
    }
    for (const auto& [technique_id, cost] : type.removal_cost)
      application_of(technique_id, type.name).removal_cost[type.name] =
          type.expected_count * cost;
  }
  return scenario;
}

double difficulty_from_effectiveness(double effectiveness) {
  if (!std::isfinite(effectiveness) || effectiveness < 0.0 || effectiveness > 1.0)
    throw std::domain_error("effectiveness outside [0,1]");
  return 1.0 - effectiveness;
}

double effectiveness_from_difficulty(std::span<const double> thetas,
                                     std::span<const double> weights) {
  if (thetas.size() != weights.size())
    throw std::domain_error("thetas and weights differ in length");
  double weight_sum = 0.0;
  double mean_theta = 0.0;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (!(weights[k] >= 0.0)) throw std::domain_error("negative weight");
    weight_sum += weights[k];
    mean_theta += weights[k] * thetas[k];
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw std::domain_error("weights must sum to 1");
  return 1.0 - mean_theta;
}

}  // namespace qaecon
