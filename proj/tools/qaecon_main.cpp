// qaecon: evaluate, simulate, optimize, and analyze quality-assurance plans.
//
// Exit codes: 0 success, 2 scenario parse error, 3 scenario validation error,
// 4 bad simulation config, 5 infeasible budget.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qaecon/calibration.hpp"
#include "qaecon/economics.hpp"
#include "qaecon/planner.hpp"
#include "qaecon/report.hpp"
#include "qaecon/scenario_io.hpp"
#include "qaecon/simulator.hpp"

namespace {

using namespace qaecon;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSimConfig = 4;
constexpr int kExitBudget = 5;

// Loads and validates, or exits with the contract code.
Scenario load_or_exit(const std::string& path) {
  LoadedScenario loaded;
  try {
    loaded = load_scenario_file(path);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    std::exit(kExitParse);
  }
  const ValidationReport report = validate_scenario(loaded.scenario);
  if (!report.ok()) {
    std::cerr << "invalid scenario " << path << ":\n" << report.to_string();
    std::exit(kExitValidation);
  }
  return loaded.scenario;
}

void append_event_rows(std::vector<ReportRow>& rows, const std::string& fault_id,
                       const std::vector<std::pair<std::string, double>>& detected_by,
                       double predecessor_first, double escape, const std::string& provenance) {
  for (const auto& [app_id, p] : detected_by)
    rows.push_back(ReportRow::number("p_detected_by[" + fault_id + "][" + app_id + "]", p,
                                     "probability", provenance));
  rows.push_back(ReportRow::number("p_predecessor_first[" + fault_id + "]", predecessor_first,
                                   "probability", provenance));
  rows.push_back(ReportRow::number("p_escape[" + fault_id + "]", escape, "probability",
                                   provenance));
}

void append_breakdown_rows(std::vector<ReportRow>& rows, const CostBreakdown& breakdown,
                           const Scenario& scenario) {
  const std::string& cur = scenario.currency_unit;
  rows.push_back(ReportRow::number("direct_cost", breakdown.direct, cur, "analytic"));
  rows.push_back(ReportRow::number("future_cost", breakdown.future, cur, "analytic"));
  rows.push_back(ReportRow::number("revenue", breakdown.revenue, cur, "analytic"));
  if (breakdown.roi)
    rows.push_back(ReportRow::number("roi", *breakdown.roi, "ratio", "analytic"));
  else
    rows.push_back(ReportRow::text("roi", "undefined", "ratio", "analytic"));
}

int cmd_evaluate(const std::string& path) {
  const Scenario scenario = load_or_exit(path);
  const CostBreakdown breakdown = evaluate_scenario(scenario);

  std::vector<ReportRow> rows;
  append_breakdown_rows(rows, breakdown, scenario);
  for (const FaultEventProbabilities& events : breakdown.per_fault)
    append_event_rows(rows, events.fault_id, events.detected_by, events.predecessor_first,
                      events.escape, "analytic");
  write_report_csv(std::cout, rows);
  return kExitOk;
}

int cmd_simulate(const std::string& path, std::uint64_t reps, std::uint64_t seed) {
  const Scenario scenario = load_or_exit(path);
  if (reps == 0) {
    std::cerr << "simulation config error: --reps must be >= 1\n";
    return kExitSimConfig;
  }
  const SimulationResult result = simulate(scenario, SimulationConfig{reps, seed});

  const std::string& cur = scenario.currency_unit;
  auto simulated = [](double se) { return "simulated +/-" + format_number(se); };
  std::vector<ReportRow> rows;
  rows.push_back(ReportRow::number("direct_cost", result.mean_direct, cur,
                                   simulated(result.se_direct)));
  rows.push_back(ReportRow::number("future_cost", result.mean_future, cur,
                                   simulated(result.se_future)));
  rows.push_back(ReportRow::number("revenue", result.mean_revenue, cur,
                                   simulated(result.se_revenue)));
  rows.push_back(ReportRow::number("detected_faults", result.mean_detected, "defects",
                                   "simulated"));
  double total_effort = 0.0;
  for (const TechniqueApplication& app : scenario.applications) total_effort += app.effort;
  if (total_effort > 0.0)
    rows.push_back(ReportRow::number("efficiency", efficiency(result, scenario),
                                     "defects/" + scenario.effort_unit, "simulated"));
  for (const EventFrequencies& events : result.per_fault)
    append_event_rows(rows, events.fault_id, events.detected_by, events.predecessor_first,
                      events.escape, "simulated");
  rows.push_back(ReportRow::number("replications", static_cast<double>(result.replications),
                                   "count", "config"));
  rows.push_back(ReportRow::number("seed", static_cast<double>(result.seed), "count", "config"));
  write_report_csv(std::cout, rows);
  return kExitOk;
}

// "id=value" pairs from repeatable --min/--max flags.
void apply_bound_flags(Budget& budget, const std::vector<std::string>& entries, bool is_min) {
  for (const std::string& entry : entries) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "bound must be id=value: " << entry << "\n";
      std::exit(kExitError);
    }
    const std::string id = entry.substr(0, eq);
    const double value = parse_number(entry.substr(eq + 1));
    if (is_min)
      budget.bounds[id].min = value;
    else
      budget.bounds[id].max = value;
  }
}

int cmd_optimize(const std::string& path, double budget_total, double grid_step,
                 bool search_order, std::uint64_t max_permutations,
                 const std::string& objective_name, const std::vector<std::string>& min_bounds,
                 const std::vector<std::string>& max_bounds) {
  Scenario scenario = load_or_exit(path);
  const Objective objective =
      objective_name == "net" ? Objective::NetBenefit : Objective::Roi;

  std::vector<ReportRow> rows;
  try {
    if (search_order) {
      const OrderPlan order_plan = optimize_order(scenario, max_permutations, objective);
      Scenario reordered = scenario;
      reordered.applications.clear();
      for (const std::string& id : order_plan.order)
        reordered.applications.push_back(scenario.application(id));
      scenario = std::move(reordered);
      for (std::size_t k = 0; k < order_plan.order.size(); ++k)
        rows.push_back(ReportRow::text("order[" + std::to_string(k) + "]", order_plan.order[k],
                                       "application",
                                       order_plan.exhaustive ? "exhaustive" : "greedy"));
    }

    Budget budget;
    budget.total_effort = budget_total;
    budget.grid_step = grid_step;
    apply_bound_flags(budget, min_bounds, true);
    apply_bound_flags(budget, max_bounds, false);
    const EffortPlan plan = optimize_effort(scenario, budget, objective);
    for (std::size_t x = 0; x < scenario.applications.size(); ++x)
      rows.push_back(ReportRow::number("effort[" + scenario.applications[x].id + "]",
                                       plan.efforts[x], scenario.effort_unit,
                                       plan.exhaustive ? "grid" : "coordinate-ascent"));
    for (std::size_t x = 0; x < scenario.applications.size(); ++x)
      scenario.applications[x].effort = plan.efforts[x];
    append_breakdown_rows(rows, plan.breakdown, scenario);
  } catch (const infeasible_budget_error& e) {
    std::cerr << "infeasible budget: " << e.what() << "\n";
    return kExitBudget;
  }
  write_report_csv(std::cout, rows);
  return kExitOk;
}

int cmd_sensitivity(const std::string& path, double delta) {
  const Scenario scenario = load_or_exit(path);
  SensitivityReport report;
  try {
    report = sensitivity_oat(scenario, default_factors(scenario), delta);
  } catch (const std::exception& e) {
    std::cerr << "sensitivity error: " << e.what() << "\n";
    return kExitError;
  }
  std::cout << "rank,factor,base_value,roi_minus,roi_plus,elasticity\n";
  for (std::size_t k = 0; k < report.factors.size(); ++k) {
    const FactorSensitivity& f = report.factors[k];
    std::cout << (k + 1) << ',' << f.factor << ',' << format_number(f.base_value) << ','
              << format_number(f.roi_minus) << ',' << format_number(f.roi_plus) << ','
              << format_number(f.elasticity) << '\n';
  }
  return kExitOk;
}

void print_entry_csv(std::ostream& out, const CalibrationEntry& entry) {
  auto cell = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
  };
  out << "key,unit,lowest,mean,median,highest,source_note\n";
  out << entry.key << ',' << entry.unit << ',' << cell(entry.lowest) << ',' << cell(entry.mean)
      << ',' << cell(entry.median) << ',' << cell(entry.highest) << ',' << entry.note << '\n';
}

int cmd_calibration(const std::string& mode, const std::string& argument) {
  if (mode == "list") {
    for (const std::string& key : builtin_keys()) std::cout << key << '\n';
    return kExitOk;
  }
  if (mode == "show") {
    try {
      print_entry_csv(std::cout, builtin_entry(argument));
    } catch (const lookup_error& e) {
      std::cerr << e.what() << "\n";
      return kExitError;
    }
    return kExitOk;
  }
  if (mode == "export") {
    std::ofstream out(argument, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << argument << "\n";
      return kExitError;
    }
    export_dataset_csv(out);
    return kExitOk;
  }
  std::cerr << "calibration: unknown mode '" << mode << "' (list, show, export)\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quality-assurance economics: costs, revenues, and ROI of "
               "defect-detection plans"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 1;
  double budget_total = 0.0;
  double grid_step = 1.0;
  bool search_order = false;
  std::uint64_t max_permutations = 40320;
  std::string objective_name = "roi";
  double delta = 0.01;
  std::vector<std::string> min_bounds;
  std::vector<std::string> max_bounds;
  std::string calibration_mode;
  std::string calibration_argument;

  CLI::App* evaluate = app.add_subcommand("evaluate", "analytic costs, revenues, and ROI");
  evaluate->add_option("scenario", scenario_path, "scenario JSON file")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the same plan");
  simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
  simulate->add_option("--reps", reps, "number of replications");
  simulate->add_option("--seed", seed, "random seed");

  CLI::App* optimize = app.add_subcommand("optimize", "allocate effort (and order) under a budget");
  optimize->add_option("scenario", scenario_path, "scenario JSON file")->required();
  optimize->add_option("--budget", budget_total, "total effort budget")->required();
  optimize->add_option("--grid-step", grid_step, "effort grid step");
  optimize->add_flag("--order", search_order, "also search the application order");
  optimize->add_option("--max-permutations", max_permutations,
                       "permutation cap for exhaustive ordering search");
  optimize->add_option("--objective", objective_name, "roi or net")
      ->check(CLI::IsMember({"roi", "net"}));
  optimize->add_option("--min", min_bounds, "per-application minimum effort, id=value");
  optimize->add_option("--max", max_bounds, "per-application maximum effort, id=value");

  CLI::App* sensitivity = app.add_subcommand("sensitivity", "one-at-a-time ROI elasticities");
  sensitivity->add_option("scenario", scenario_path, "scenario JSON file")->required();
  sensitivity->add_option("--delta", delta, "relative perturbation")
      ->check(CLI::PositiveNumber);

  CLI::App* calibration = app.add_subcommand("calibration", "embedded survey dataset");
  calibration->add_option("mode", calibration_mode, "list | show | export")->required();
  calibration->add_option("argument", calibration_argument, "key for show, path for export");

  CLI11_PARSE(app, argc, argv);

  if (evaluate->parsed()) return cmd_evaluate(scenario_path);
  if (simulate->parsed()) return cmd_simulate(scenario_path, reps, seed);
  if (optimize->parsed())
    return cmd_optimize(scenario_path, budget_total, grid_step, search_order, max_permutations,
                        objective_name, min_bounds, max_bounds);
  if (sensitivity->parsed()) return cmd_sensitivity(scenario_path, delta);
  if (calibration->parsed()) return cmd_calibration(calibration_mode, calibration_argument);
  return kExitError;
}
