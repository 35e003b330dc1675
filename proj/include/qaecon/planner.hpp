#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaecon/economics.hpp"
#include "qaecon/model.hpp"

namespace qaecon {

struct EffortBounds {
  double min = 0.0;
  std::optional<double> max;  // absent: capped by the budget only
};

// Effort budget over the plan. Applications without an entry in `bounds` get
// [0, total]. The grid is anchored at each application's minimum.
struct Budget {
  double total_effort = 0.0;
  double grid_step = 1.0;
  std::map<std::string, EffortBounds> bounds;  // by application id
};

// ROI is the headline objective; net benefit (revenue - direct - future) is
// offered because ROI can prefer degenerate tiny-denominator plans.
enum class Objective { Roi, NetBenefit };

struct EffortPlan {
  std::vector<double> efforts;  // aligned with the scenario's application order
  CostBreakdown breakdown;
  double objective_value = 0.0;
  bool exhaustive = false;  // full grid enumerated (vs. coordinate ascent)
};

// Maximizes the objective over grid allocations with sum(t) <= total_effort.
// Exhaustive when the grid has at most 10^6 points, otherwise coordinate
// ascent seeded from the better of the all-minimum and uniform points; both
// of those are always evaluated. Throws infeasible_budget_error when the
// bounds cannot be met.
EffortPlan optimize_effort(const Scenario& scenario, const Budget& budget,
                           Objective objective = Objective::Roi);

struct OrderPlan {
  std::vector<std::string> order;  // application ids, first to last
  CostBreakdown breakdown;
  double objective_value = 0.0;
  bool exhaustive = false;
};

// Searches application orderings. Exhaustive for up to 8 applications when
// |X|! <= max_permutations (ties break to the lexicographically smallest id
// sequence), greedy insertion in id order otherwise.
OrderPlan optimize_order(const Scenario& scenario, std::uint64_t max_permutations = 40320,
                         Objective objective = Objective::Roi);

// One-at-a-time sensitivity. Factors address single numeric fields:
//   application.<id>.setup_cost | exec_rate | effort
//   application.<id>.difficulty.<fault>.theta0 | rate | floor
//   application.<id>.removal_cost.<fault>
//   fault.<id>.pi | v_field | f_effect
struct FactorSensitivity {
  std::string factor;
  double base_value = 0.0;
  double roi_minus = 0.0;  // ROI at (1 - delta) * base
  double roi_plus = 0.0;   // ROI at (1 + delta) * base
  double elasticity = 0.0;
};

struct SensitivityReport {
  double base_roi = 0.0;
  double delta = 0.0;
  std::vector<FactorSensitivity> factors;  // ranked by |elasticity|, then name
};

// Every addressable numeric field of the scenario.
std::vector<std::string> default_factors(const Scenario& scenario);

// Central-difference elasticities: ROI recomputed at (1 +/- delta) * base;
// elasticity = (roi_plus - roi_minus) / (2 * delta * |base_roi|), so the sign
// follows the direction of the ROI change for loss-making plans too. Throws
// when the base ROI is undefined or a factor path resolves to nothing.
SensitivityReport sensitivity_oat(const Scenario& scenario,
                                  const std::vector<std::string>& factors, double delta);

}  // namespace qaecon
