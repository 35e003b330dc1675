#pragma once

#include <optional>
#include <vector>

#include "qaecon/model.hpp"

namespace qaecon {

// Expected costs and revenues of a plan. `roi` is empty when
// direct + future == 0 (nothing was spent, the ratio is undefined).
struct CostBreakdown {
  double direct = 0.0;   // d_X
  double future = 0.0;   // o_X
  double revenue = 0.0;  // r_X (saved future costs)
  std::optional<double> roi;
  std::vector<FaultEventProbabilities> per_fault;
};

// Single-application expected quantities:
//   direct  = setup + rate * effort + sum_i (1 - theta(i)) * removal(i)
//   future  = sum_i pi_i * theta(i) * (v_field + f_effect)
//   revenue = sum_i pi_i * (1 - theta(i)) * (v_field + f_effect)
double direct_cost_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults);
double future_cost_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults);
double revenue_single(const TechniqueApplication& app, const std::vector<FaultSpec>& faults);

// Combined quantities over the ordered plan, accounting for what earlier
// applications already caught (directly or through a predecessor).
double direct_cost_combined(const Scenario& scenario);
double future_cost_combined(const Scenario& scenario);
double revenue_combined(const Scenario& scenario);

// d_X, o_X, r_X in one pass without the per-fault detail; cheap enough for
// optimizers that evaluate many candidate plans.
struct PlanQuantities {
  double direct = 0.0;
  double future = 0.0;
  double revenue = 0.0;
};
PlanQuantities combined_quantities(const Scenario& scenario);

// (revenue - direct - future) / (direct + future).
// Throws undefined_roi_error when direct + future == 0.
double roi(double direct, double future, double revenue);

CostBreakdown evaluate_scenario(const Scenario& scenario);

}  // namespace qaecon
