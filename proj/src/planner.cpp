#include "qaecon/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qaecon {

namespace {

constexpr double kBudgetSlack = 1e-9;      // absorbs accumulated grid arithmetic error
constexpr std::uint64_t kMaxGridPoints = 1000000;

double objective_of(const Scenario& scenario, Objective objective) {
  const PlanQuantities q = combined_quantities(scenario);
  if (objective == Objective::NetBenefit) return q.revenue - q.direct - q.future;
  const double capital = q.direct + q.future;
  if (capital == 0.0) return -std::numeric_limits<double>::infinity();
  return (q.revenue - capital) / capital;
}

struct GridAxes {
  std::vector<double> minimum;                 // per application
  std::vector<std::vector<double>> values;     // per application, ascending
  double total = 0.0;
};

GridAxes build_axes(const Scenario& scenario, const Budget& budget) {
  if (!(budget.grid_step > 0.0)) throw std::domain_error("budget: grid_step must be > 0");
  if (!(budget.total_effort >= 0.0))
    throw infeasible_budget_error("budget: total effort must be >= 0");

  GridAxes axes;
  axes.total = budget.total_effort;
  double min_sum = 0.0;
  for (const TechniqueApplication& app : scenario.applications) {
    EffortBounds b;
    if (auto it = budget.bounds.find(app.id); it != budget.bounds.end()) b = it->second;
    if (!(b.min >= 0.0))
      throw infeasible_budget_error("budget: negative minimum for " + app.id);
    if (b.max && *b.max < b.min - kBudgetSlack)
      throw infeasible_budget_error("budget: max below min for " + app.id);
    axes.minimum.push_back(b.min);
    min_sum += b.min;
  }
  if (min_sum > budget.total_effort + kBudgetSlack)
    throw infeasible_budget_error("budget: total effort below the sum of minimum bounds");

  const double discretionary = budget.total_effort - min_sum;
  for (std::size_t x = 0; x < scenario.applications.size(); ++x) {
    EffortBounds b;
    if (auto it = budget.bounds.find(scenario.applications[x].id); it != budget.bounds.end())
      b = it->second;
    double cap = axes.minimum[x] + discretionary;
    if (b.max) cap = std::min(cap, *b.max);

    std::vector<double> axis;
    for (double v = axes.minimum[x]; v <= cap + kBudgetSlack; v += budget.grid_step)
      axis.push_back(v);
    if (axis.empty()) axis.push_back(axes.minimum[x]);
    axes.values.push_back(std::move(axis));
  }
  return axes;
}

std::uint64_t grid_point_count(const GridAxes& axes) {
  std::uint64_t count = 1;
  for (const auto& axis : axes.values) {
    if (axis.empty()) return 0;
    if (count > kMaxGridPoints / axis.size() + 1) return kMaxGridPoints + 1;  // saturate
    count *= axis.size();
  }
  return count;
}

class EffortSearch {
 public:
  EffortSearch(const Scenario& scenario, const GridAxes& axes, Objective objective)
      : axes_(axes), objective_(objective), working_(scenario) {}

  void consider(const std::vector<double>& efforts) {
    double sum = 0.0;
    for (double t : efforts) sum += t;
    if (sum > axes_.total + kBudgetSlack) return;
    for (std::size_t x = 0; x < efforts.size(); ++x)
      working_.applications[x].effort = efforts[x];
    const double value = objective_of(working_, objective_);
    if (!best_ || value > best_value_) {
      best_ = efforts;
      best_value_ = value;
    }
  }

  // Depth-first enumeration with budget pruning; lexicographic order over the
  // axes so ties resolve deterministically to the first maximum.
  void exhaustive() {
    std::vector<double> current(axes_.values.size(), 0.0);
    std::vector<double> min_suffix(axes_.values.size() + 1, 0.0);
    for (std::size_t x = axes_.values.size(); x-- > 0;)
      min_suffix[x] = min_suffix[x + 1] + axes_.minimum[x];
    descend(0, 0.0, current, min_suffix);
  }

  void coordinate_ascent() {
    // Seeded by the best candidate seen so far (all-minimum / uniform).
    std::vector<double> current = *best_;
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 200) {
      improved = false;
      for (std::size_t x = 0; x < axes_.values.size(); ++x) {
        double sum_others = 0.0;
        for (std::size_t y = 0; y < current.size(); ++y)
          if (y != x) sum_others += current[y];
        double best_here = current[x];
        double best_here_value = evaluate_at(current);
        for (double v : axes_.values[x]) {
          if (sum_others + v > axes_.total + kBudgetSlack) break;
          std::vector<double> candidate = current;
          candidate[x] = v;
          const double value = evaluate_at(candidate);
          if (value > best_here_value) {
            best_here = v;
            best_here_value = value;
          }
        }
        if (best_here != current[x]) {
          current[x] = best_here;
          improved = true;
        }
      }
    }
    consider(current);
  }

  const std::vector<double>& best() const { return *best_; }
  double best_value() const { return best_value_; }
  bool found() const { return best_.has_value(); }

 private:
  double evaluate_at(const std::vector<double>& efforts) {
    for (std::size_t x = 0; x < efforts.size(); ++x)
      working_.applications[x].effort = efforts[x];
    return objective_of(working_, objective_);
  }

  void descend(std::size_t x, double sum, std::vector<double>& current,
               const std::vector<double>& min_suffix) {
    if (x == axes_.values.size()) {
      consider(current);
      return;
    }
    for (double v : axes_.values[x]) {
      if (sum + v + min_suffix[x + 1] > axes_.total + kBudgetSlack) break;
      current[x] = v;
      descend(x + 1, sum + v, current, min_suffix);
    }
  }

  const GridAxes& axes_;
  Objective objective_;
  Scenario working_;
  std::optional<std::vector<double>> best_;
  double best_value_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

EffortPlan optimize_effort(const Scenario& scenario, const Budget& budget, Objective objective) {
  require_valid(scenario);
  const GridAxes axes = build_axes(scenario, budget);
  const std::size_t n = scenario.applications.size();

  EffortSearch search(scenario, axes, objective);

  // The all-minimum and uniform points are always candidates, whatever the
  // grid resolution.
  search.consider(axes.minimum);
  double min_sum = 0.0;
  for (double m : axes.minimum) min_sum += m;
  if (n > 0) {
    const double share = (axes.total - min_sum) / static_cast<double>(n);
    std::vector<double> uniform(axes.minimum);
    for (std::size_t x = 0; x < n; ++x) {
      uniform[x] += share;
      if (!axes.values[x].empty()) uniform[x] = std::min(uniform[x], axes.values[x].back());
    }
    search.consider(uniform);
  }

  const bool exhaustive = grid_point_count(axes) <= kMaxGridPoints;
  if (exhaustive)
    search.exhaustive();
  else
    search.coordinate_ascent();

  EffortPlan plan;
  plan.efforts = search.best();
  plan.exhaustive = exhaustive;
  plan.objective_value = search.best_value();
  Scenario tuned = scenario;
  for (std::size_t x = 0; x < n; ++x) tuned.applications[x].effort = plan.efforts[x];
  plan.breakdown = evaluate_scenario(tuned);
  return plan;
}

namespace {

Scenario reorder(const Scenario& scenario, const std::vector<std::size_t>& permutation) {
  Scenario out = scenario;
  out.applications.clear();
  for (std::size_t x : permutation) out.applications.push_back(scenario.applications[x]);
  return out;
}

}  // namespace

OrderPlan optimize_order(const Scenario& scenario, std::uint64_t max_permutations,
                         Objective objective) {
  require_valid(scenario);
  const std::size_t n = scenario.applications.size();

  std::vector<std::size_t> indices(n);
  for (std::size_t x = 0; x < n; ++x) indices[x] = x;
  auto id_less = [&](std::size_t a, std::size_t b) {
    return scenario.applications[a].id < scenario.applications[b].id;
  };
  std::sort(indices.begin(), indices.end(), id_less);

  std::uint64_t factorial = 1;
  for (std::size_t k = 2; k <= n && factorial <= max_permutations; ++k) factorial *= k;
  const bool exhaustive = n <= 8 && factorial <= max_permutations;

  OrderPlan plan;
  plan.exhaustive = exhaustive;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_perm;

  if (exhaustive) {
    // Lexicographic id order makes the deterministic tie-break: the first
    // permutation reaching the maximum wins.
    std::vector<std::size_t> perm = indices;
    do {
      const double value = objective_of(reorder(scenario, perm), objective);
      if (best_perm.empty() || value > best_value) {
        best_value = value;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end(), id_less));
  } else {
    // Greedy insertion, processing applications in id order.
    for (std::size_t next : indices) {
      std::size_t best_pos = 0;
      double best_pos_value = -std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos <= best_perm.size(); ++pos) {
        std::vector<std::size_t> candidate = best_perm;
        candidate.insert(candidate.begin() + static_cast<std::ptrdiff_t>(pos), next);
        const double value = objective_of(reorder(scenario, candidate), objective);
        if (pos == 0 || value > best_pos_value) {
          best_pos = pos;
          best_pos_value = value;
        }
      }
      best_perm.insert(best_perm.begin() + static_cast<std::ptrdiff_t>(best_pos), next);
      best_value = best_pos_value;
    }
  }

  const Scenario ordered = reorder(scenario, best_perm);
  for (std::size_t x : best_perm) plan.order.push_back(scenario.applications[x].id);
  plan.objective_value = best_value;
  plan.breakdown = evaluate_scenario(ordered);
  return plan;
}

namespace {

bool consume_prefix(std::string& path, const std::string& prefix) {
  if (path.rfind(prefix, 0) != 0) return false;
  path.erase(0, prefix.size());
  return true;
}

double* resolve_curve_field(DifficultyCurve& curve, const std::string& field) {
  if (field == "theta0") return &curve.theta0;
  if (field == "rate") return &curve.rate;
  if (field == "floor") return &curve.floor;
  return nullptr;
}

// Pointer into `scenario` for a factor path; ids are matched against the
// scenario so dots inside ids cannot mislead the parser.
double* resolve_factor(Scenario& scenario, const std::string& path) {
  for (TechniqueApplication& app : scenario.applications) {
    std::string tail = path;
    if (!consume_prefix(tail, "application." + app.id + ".")) continue;
    if (tail == "setup_cost") return &app.setup_cost;
    if (tail == "exec_rate") return &app.exec_rate;
    if (tail == "effort") return &app.effort;
    if (std::string rest = tail; consume_prefix(rest, "difficulty.")) {
      for (auto& [fault_id, curve] : app.difficulty) {
        std::string field = rest;
        if (consume_prefix(field, fault_id + "."))
          if (double* p = resolve_curve_field(curve, field)) return p;
      }
    }
    if (std::string rest = tail; consume_prefix(rest, "removal_cost.")) {
      if (auto it = app.removal_cost.find(rest); it != app.removal_cost.end())
        return &it->second;
    }
  }
  for (FaultSpec& fault : scenario.faults) {
    std::string tail = path;
    if (!consume_prefix(tail, "fault." + fault.id + ".")) continue;
    if (tail == "pi") return &fault.pi;
    if (tail == "v_field") return &fault.v_field;
    if (tail == "f_effect") return &fault.f_effect;
  }
  throw lookup_error("unknown factor path: " + path);
}

}  // namespace

std::vector<std::string> default_factors(const Scenario& scenario) {
  std::vector<std::string> factors;
  for (const TechniqueApplication& app : scenario.applications) {
    const std::string base = "application." + app.id + ".";
    factors.push_back(base + "setup_cost");
    factors.push_back(base + "exec_rate");
    factors.push_back(base + "effort");
    for (const auto& [fault_id, curve] : app.difficulty) {
      factors.push_back(base + "difficulty." + fault_id + ".theta0");
      if (curve.form != CurveForm::Constant) {
        factors.push_back(base + "difficulty." + fault_id + ".rate");
        factors.push_back(base + "difficulty." + fault_id + ".floor");
      }
    }
    for (const auto& [fault_id, _] : app.removal_cost)
      factors.push_back(base + "removal_cost." + fault_id);
  }
  for (const FaultSpec& fault : scenario.faults) {
    const std::string base = "fault." + fault.id + ".";
    factors.push_back(base + "pi");
    factors.push_back(base + "v_field");
    factors.push_back(base + "f_effect");
  }
  return factors;
}

SensitivityReport sensitivity_oat(const Scenario& scenario,
                                  const std::vector<std::string>& factors, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("sensitivity: delta must be > 0");
  require_valid(scenario);

  const PlanQuantities base = combined_quantities(scenario);
  const double base_roi = roi(base.direct, base.future, base.revenue);
  if (base_roi == 0.0)
    throw std::domain_error("sensitivity: elasticities undefined at break-even (base ROI is 0)");

  SensitivityReport report;
  report.base_roi = base_roi;
  report.delta = delta;

  Scenario working = scenario;
  for (const std::string& factor : factors) {
    double* field = resolve_factor(working, factor);
    const double base_value = *field;

    auto roi_at = [&](double value) {
      *field = value;
      const PlanQuantities q = combined_quantities(working);
      return roi(q.direct, q.future, q.revenue);
    };
    FactorSensitivity fs;
    fs.factor = factor;
    fs.base_value = base_value;
    fs.roi_minus = roi_at(base_value * (1.0 - delta));
    fs.roi_plus = roi_at(base_value * (1.0 + delta));
    *field = base_value;
    // Normalized by |base ROI| so the sign tracks the direction of the ROI
    // change even when the plan is loss-making.
    fs.elasticity = (fs.roi_plus - fs.roi_minus) / (2.0 * delta * std::abs(base_roi));
    report.factors.push_back(std::move(fs));
  }

  std::sort(report.factors.begin(), report.factors.end(),
            [](const FactorSensitivity& a, const FactorSensitivity& b) {
              const double ma = std::abs(a.elasticity);
              const double mb = std::abs(b.elasticity);
              if (ma != mb) return ma > mb;
              return a.factor < b.factor;
            });
  return report;
}

}  // namespace qaecon
