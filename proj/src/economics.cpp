#include "qaecon/economics.hpp"

namespace qaecon {

// One pass over the plan computing all three combined quantities from the
// per-fault event decomposition; allocates nothing.
PlanQuantities combined_quantities(const Scenario& scenario) {
  PlanQuantities q;
  for (const TechniqueApplication& app : scenario.applications)
    q.direct += app.setup_cost + app.exec_rate * app.effort;

  for (const FaultSpec& fault : scenario.faults) {
    double prior = 1.0;  // Theta(x, R_i), advanced application by application
    for (const TechniqueApplication& app : scenario.applications) {
      const double theta_own = app.difficulty_for(fault);
      double theta_preds = 1.0;
      for (const std::string& pred_id : fault.predecessors)
        theta_preds *= app.difficulty_for(scenario.fault(pred_id));

      const double p_detected_here = (1.0 - theta_own) * prior;
      q.direct += p_detected_here * app.removal_cost_for(fault.id);
      q.revenue += fault.pi * p_detected_here * fault.field_cost();
      prior *= theta_own * theta_preds;
    }
    q.future += fault.pi * prior * fault.field_cost();  // prior is now p_escape
  }
  return q;
}

double direct_cost_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults) {
  double cost = app.setup_cost + app.exec_rate * app.effort;
  for (const FaultSpec& fault : faults)
    cost += (1.0 - app.difficulty_for(fault)) * app.removal_cost_for(fault.id);
  return cost;
}

double future_cost_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults) {
  double cost = 0.0;
  for (const FaultSpec& fault : faults)
    cost += fault.pi * app.difficulty_for(fault) * fault.field_cost();
  return cost;
}

double revenue_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults) {
  double saved = 0.0;
  for (const FaultSpec& fault : faults)
    saved += fault.pi * (1.0 - app.difficulty_for(fault)) * fault.field_cost();
  return saved;
}

double direct_cost_combined(const Scenario& scenario) {
  return combined_quantities(scenario).direct;
}

double future_cost_combined(const Scenario& scenario) {
  return combined_quantities(scenario).future;
}

double revenue_combined(const Scenario& scenario) {
  return combined_quantities(scenario).revenue;
}

double roi(double direct, double future, double revenue) {
  const double capital = direct + future;
  if (capital == 0.0)
    throw undefined_roi_error("roi undefined: direct + future costs are zero");
  return (revenue - direct - future) / capital;
}

CostBreakdown evaluate_scenario(const Scenario& scenario) {
  const PlanQuantities q = combined_quantities(scenario);
  CostBreakdown breakdown;
  breakdown.direct = q.direct;
  breakdown.future = q.future;
  breakdown.revenue = q.revenue;
  if (q.direct + q.future > 0.0) breakdown.roi = roi(q.direct, q.future, q.revenue);
  breakdown.per_fault = all_fault_event_probabilities(scenario);
  return breakdown;
}

}  // namespace qaecon
