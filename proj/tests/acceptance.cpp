// Acceptance suite. Runs every release criterion end to end and prints one
// pass/fail line per criterion; the exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qaecon/calibration.hpp"
#include "qaecon/economics.hpp"
#include "qaecon/format.hpp"
#include "qaecon/model.hpp"
#include "qaecon/planner.hpp"
#include "qaecon/rng.hpp"
#include "qaecon/scenario_io.hpp"
#include "qaecon/simulator.hpp"
#include "support/proc.hpp"
#include "support/random_scenarios.hpp"
#include "support/stats.hpp"

using namespace qaecon;
using qaecon::testing::chi_square_gof_99;
using qaecon::testing::GofOutcome;
using qaecon::testing::random_scenario;
using qaecon::testing::run_command;
using qaecon::testing::ScenarioShape;

namespace {

const std::string bin = QAECON_CLI_BIN;
const std::string root = QAECON_SOURCE_DIR;

int failed = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
            << std::endl;
  if (!pass) ++failed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2 share one sweep: 200 randomized scenarios, 10^6
// replications each. Criterion 1 wants the analytic quantities inside 3
// standard errors for at least 99% of the (scenario, seed) pairs within the
// 5-minute budget; criterion 2 wants exact partition of unity plus chi-square
// agreement of the event frequencies. With ~700 independent chi-square tests
// at alpha = 0.01 the expected rejection count is ~1%, so "passes chi-square"
// is checked as: rejection rate within a 3-sigma binomial envelope of alpha.
// ---------------------------------------------------------------------------
void criteria_1_and_2() {
  const auto start = std::chrono::steady_clock::now();

  SplitMix64 generator(0xACCE5501u);
  const int n_scenarios = 200;
  int pairs_ok = 0;
  bool partition_ok = true;
  double worst_partition = 0.0;
  std::uint64_t gof_tests = 0;
  std::uint64_t gof_rejections = 0;

  for (int k = 0; k < n_scenarios; ++k) {
    const Scenario scenario = random_scenario(generator);
    const double d = direct_cost_combined(scenario);
    const double o = future_cost_combined(scenario);
    const double r = revenue_combined(scenario);

    const SimulationResult sim =
        simulate(scenario, SimulationConfig{1000000, 50000 + static_cast<std::uint64_t>(k)});

    auto within = [](double analytic, double mean, double se) {
      return std::abs(mean - analytic) <= 3.0 * se + 1e-9;
    };
    if (within(d, sim.mean_direct, sim.se_direct) && within(o, sim.mean_future, sim.se_future) &&
        within(r, sim.mean_revenue, sim.se_revenue))
      ++pairs_ok;

    for (std::size_t i = 0; i < scenario.faults.size(); ++i) {
      const auto analytic = fault_event_probabilities(scenario, scenario.faults[i].id);
      const double total =
          analytic.detection_total() + analytic.predecessor_first + analytic.escape;
      worst_partition = std::max(worst_partition, std::abs(total - 1.0));
      if (std::abs(total - 1.0) > 1e-12) partition_ok = false;

      std::vector<std::uint64_t> observed;
      std::vector<double> probabilities;
      const double n = static_cast<double>(sim.replications);
      for (std::size_t x = 0; x < scenario.applications.size(); ++x) {
        observed.push_back(static_cast<std::uint64_t>(
            std::llround(sim.per_fault[i].detected_by[x].second * n)));
        probabilities.push_back(analytic.detected_by[x].second);
      }
      observed.push_back(
          static_cast<std::uint64_t>(std::llround(sim.per_fault[i].predecessor_first * n)));
      probabilities.push_back(analytic.predecessor_first);
      observed.push_back(
          static_cast<std::uint64_t>(std::llround(sim.per_fault[i].escape * n)));
      probabilities.push_back(analytic.escape);

      const GofOutcome outcome = chi_square_gof_99(observed, probabilities, sim.replications);
      if (outcome == GofOutcome::Degenerate) continue;
      ++gof_tests;
      if (outcome == GofOutcome::Rejected) ++gof_rejections;
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    std::ostringstream detail;
    detail << "analytic-oracle equivalence: " << pairs_ok << "/" << n_scenarios
           << " pairs within 3 SE (>= 198 required), " << format_number(elapsed)
           << " s (< 300 required)";
    report(1, pairs_ok >= 198 && elapsed < 300.0, detail.str());
  }
  {
    const double alpha = 0.01;
    const double nt = static_cast<double>(gof_tests);
    const std::uint64_t allowed = static_cast<std::uint64_t>(
        std::floor(alpha * nt + 3.0 * std::sqrt(alpha * (1.0 - alpha) * nt)));
    std::ostringstream detail;
    detail << "partition of unity (worst |sum-1| = " << format_number(worst_partition)
           << ", <= 1e-12 required) and chi-square at alpha=0.01: " << gof_rejections << "/"
           << gof_tests << " rejections (<= " << allowed << " within the 3-sigma envelope)";
    report(2, partition_ok && gof_rejections <= allowed, detail.str());
  }
}

void criterion_3() {
  const std::pair<const char*, const char*> pairs[] = {
      {"test.functional.effectiveness", "test.functional.difficulty"},
      {"test.structural.effectiveness", "test.structural.difficulty"},
      {"test.all.effectiveness", "test.all.difficulty"},
      {"inspection.effectiveness", "inspection.difficulty"},
  };
  bool pass = true;
  double worst = 0.0;
  for (const auto& [eff, diff] : pairs) {
    const SummaryStats derived = derive_difficulty_stats(builtin_entry(eff).stats());
    const SummaryStats stored = builtin_entry(diff).stats();
    for (double delta : {derived.lowest - stored.lowest, derived.mean - stored.mean,
                         derived.median - stored.median, derived.highest - stored.highest}) {
      worst = std::max(worst, std::abs(delta));
      if (std::abs(delta) >= 0.005) pass = false;
    }
  }
  std::ostringstream detail;
  detail << "stored difficulty rows equal derived complements for all effectiveness/difficulty "
            "pairs to two decimals (worst diff "
         << format_number(worst) << ")";
  report(3, pass, detail.str());
}

void criterion_4() {
  const Scenario s2 = load_scenario_file(root + "/scenarios/s2.json").scenario;
  const CostBreakdown b = evaluate_scenario(s2);
  const double expected_roi = (2.8 - 7.32 - 1.2) / (7.32 + 1.2);
  const bool analytic_ok = std::abs(b.direct - 7.32) <= 1e-9 && std::abs(b.future - 1.2) <= 1e-9 &&
                           std::abs(b.revenue - 2.8) <= 1e-9 && b.roi &&
                           std::abs(*b.roi - expected_roi) <= 1e-9;

  const auto cli = run_command(bin + " evaluate " + root + "/scenarios/s2.json");
  const bool golden_ok = cli.output == read_file(root + "/tests/golden/evaluate_s2.csv");

  const SimulationResult sim = simulate(s2, SimulationConfig{10000000, 42});
  const bool sim_ok = std::abs(sim.mean_direct - 7.32) <= 0.005 * 7.32 &&
                      std::abs(sim.mean_future - 1.2) <= 0.005 * 1.2 &&
                      std::abs(sim.mean_revenue - 2.8) <= 0.005 * 2.8;

  std::ostringstream detail;
  detail << "worked example regression: analytic d/o/r/ROI within 1e-9 ("
         << (analytic_ok ? "yes" : "no") << "), golden file byte-identical ("
         << (golden_ok ? "yes" : "no") << "), simulated within 0.5% at 10^7 replications ("
         << (sim_ok ? "yes" : "no") << ")";
  report(4, analytic_ok && golden_ok && sim_ok, detail.str());
}

void criterion_5() {
  // Every published quadruple, shown verbatim through the CLI.
  const std::string golden = read_file(root + "/tests/golden/calibration_export.csv");
  std::map<std::string, std::string> golden_rows;
  {
    std::istringstream lines(golden);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      const std::string key = line.substr(0, line.find(','));
      golden_rows[key] = line;
    }
  }

  int shown = 0;
  bool shows_ok = true;
  for (const CalibrationEntry& e : builtin_dataset()) {
    if (!e.complete() && e.key != "field.removal_cost.post_outlier") continue;
    const auto r = run_command(bin + " calibration show " + e.key);
    const std::string expected =
        "key,unit,lowest,mean,median,highest,source_note\n" + golden_rows[e.key] + "\n";
    if (r.exit_code != 0 || r.output != expected) shows_ok = false;
    ++shown;
  }

  const std::string export_path =
      (std::filesystem::temp_directory_path() / "qaecon_acceptance_export.csv").string();
  run_command(bin + " calibration export " + export_path);
  const bool export_ok = read_file(export_path) == golden;

  // The paper-level filtered set is not reproducible (raw study values were
  // never published); the procedure is validated on a synthetic set instead,
  // and the published post-filter mean/median ship as documentation values.
  const double synthetic[] = {20, 22, 24, 25, 26, 28, 30, 200};
  const OutlierSplit split = iqr_outlier_filter(synthetic);
  const SummaryStats kept = summary_stats(split.kept);
  const bool filter_ok = split.removed.size() == 1 && split.removed[0] == 200 &&
                         std::abs(kept.mean - 25) <= 1e-12 && std::abs(kept.median - 25) <= 1e-12;
  const CalibrationEntry& post = builtin_entry("field.removal_cost.post_outlier");
  const bool docs_ok = post.mean && *post.mean == 27.24 && post.median && *post.median == 27.0;

  std::ostringstream detail;
  detail << "calibration fidelity: " << shown << " keys shown verbatim (>= 20 required, ok="
         << (shows_ok ? "yes" : "no") << "), export matches golden ("
         << (export_ok ? "yes" : "no")
         << "), synthetic outlier filter kept mean 25 / median 25 ("
         << (filter_ok ? "yes" : "no") << "; raw survey values unavailable), post-outlier "
         << "documentation values 27.24/27 (" << (docs_ok ? "yes" : "no") << ")";
  report(5, shown >= 20 && shows_ok && export_ok && filter_ok && docs_ok, detail.str());
}

void criterion_6() {
  SplitMix64 generator(0xF00D5EED);
  bool order_oracle_ok = true;
  for (int k = 0; k < 50; ++k) {
    ScenarioShape shape;
    shape.max_applications = 5;
    shape.max_faults = 4;
    Scenario s = random_scenario(generator, shape);
    const OrderPlan plan = optimize_order(s, 130);  // 5! = 120

    // Independent brute force over all permutations.
    std::vector<std::size_t> idx(s.applications.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end());
    double best = -1e300;
    do {
      Scenario candidate = s;
      candidate.applications.clear();
      for (std::size_t i : idx) candidate.applications.push_back(s.applications[i]);
      const PlanQuantities q = combined_quantities(candidate);
      if (q.direct + q.future > 0.0)
        best = std::max(best, (q.revenue - q.direct - q.future) / (q.direct + q.future));
    } while (std::next_permutation(idx.begin(), idx.end()));

    if (!plan.exhaustive || std::abs(plan.objective_value - best) > 1e-12)
      order_oracle_ok = false;
  }

  // Dominance: equal costs, strictly easier curve wins the whole budget.
  Scenario dominance;
  {
    FaultSpec f;
    f.id = "f";
    f.doc_class = "code";
    f.pi = 0.9;
    f.v_field = 500;
    f.f_effect = 500;
    dominance.faults = {f};
    TechniqueApplication a;
    a.id = "A";
    a.setup_cost = 1;
    a.exec_rate = 1;
    a.difficulty["f"] = DifficultyCurve::linear(1.0, 0.0, 0.05);
    TechniqueApplication b = a;
    b.id = "B";
    b.difficulty["f"] = DifficultyCurve::linear(0.95, 0.0, 0.05);
    dominance.applications = {a, b};
  }
  Budget budget;
  budget.total_effort = 10;
  budget.grid_step = 1;
  const EffortPlan dom = optimize_effort(dominance, budget);
  const bool dominance_ok = dom.efforts[0] == 0.0 && dom.efforts[1] == 10.0;

  // Scale invariance, with exact power-of-two factors.
  bool scale_ok = true;
  for (int k = 0; k < 50; ++k) {
    ScenarioShape shape;
    shape.max_applications = 3;
    shape.max_faults = 4;
    const Scenario s = random_scenario(generator, shape);
    Budget b;
    b.total_effort = 8;
    b.grid_step = 2;
    const EffortPlan base_effort = optimize_effort(s, b);
    const OrderPlan base_order = optimize_order(s);

    Scenario scaled = s;
    const double c = (k % 2 == 0) ? 2.0 : 0.5;
    for (TechniqueApplication& app : scaled.applications) {
      app.setup_cost *= c;
      app.exec_rate *= c;
      for (auto& [_, v] : app.removal_cost) v *= c;
    }
    for (FaultSpec& f : scaled.faults) {
      f.v_field *= c;
      f.f_effect *= c;
    }
    const EffortPlan scaled_effort = optimize_effort(scaled, b);
    const OrderPlan scaled_order = optimize_order(scaled);
    if (scaled_effort.efforts != base_effort.efforts || scaled_order.order != base_order.order)
      scale_ok = false;
  }

  std::ostringstream detail;
  detail << "optimizer soundness: exhaustive ordering equals brute force on 50 scenarios ("
         << (order_oracle_ok ? "yes" : "no") << "), dominance allocates the full budget ("
         << (dominance_ok ? "yes" : "no") << "), ROI scale-invariance on 50 scenarios ("
         << (scale_ok ? "yes" : "no") << ")";
  report(6, order_oracle_ok && dominance_ok && scale_ok, detail.str());
}

void criterion_7() {
  const std::string cmd =
      bin + " simulate " + root + "/scenarios/s2.json --reps 400000 --seed 20240229";
  const auto repeat = run_command(cmd);
  const auto repeat2 = run_command(cmd);
  const auto t1 = run_command("QAECON_THREADS=1 " + cmd);
  const auto t2 = run_command("QAECON_THREADS=2 " + cmd);
  const auto t8 = run_command("QAECON_THREADS=8 " + cmd);
  const bool pass = repeat.exit_code == 0 && repeat.output == repeat2.output &&
                    repeat.output == t1.output && t1.output == t2.output &&
                    t2.output == t8.output;
  report(7, pass,
         "determinism: simulate output byte-identical across reruns and QAECON_THREADS 1/2/8");
}

void criterion_8() {
  // One fault, one technique, constant difficulty; every elasticity has a
  // closed form: d = u + c*t + (1-theta)v, o = pi*theta*W, r = pi*(1-theta)*W,
  // ROI = r/(d+o) - 1.
  const double u = 10, c = 5, t = 2, theta = 0.5, v = 4, pi = 0.1, W = 100, vf = 30;
  const double d = u + c * t + (1 - theta) * v;
  const double o = pi * theta * W;
  const double r = pi * (1 - theta) * W;
  const double D = d + o;
  const double abs_roi = std::abs(r / D - 1.0);

  Scenario s;
  FaultSpec fault;
  fault.id = "f1";
  fault.doc_class = "code";
  fault.pi = pi;
  fault.v_field = vf;
  fault.f_effect = W - vf;
  s.faults = {fault};
  TechniqueApplication app;
  app.id = "A";
  app.setup_cost = u;
  app.exec_rate = c;
  app.effort = t;
  app.difficulty["f1"] = DifficultyCurve::constant(theta);
  app.removal_cost["f1"] = v;
  s.applications = {app};

  const double delta = 1e-4;
  const std::vector<std::string> factors = {
      "application.A.setup_cost",           "application.A.exec_rate",
      "application.A.effort",               "fault.f1.pi",
      "application.A.removal_cost.f1",      "application.A.difficulty.f1.theta0",
      "fault.f1.v_field"};
  const SensitivityReport rep = sensitivity_oat(s, factors, delta);

  const double a_term = (1 - theta) * W;
  const double b_term = theta * W;
  const std::map<std::string, double> analytic = {
      {"application.A.setup_cost", u * (-r / (D * D)) / abs_roi},
      {"application.A.exec_rate", c * (-r * t / (D * D)) / abs_roi},
      {"application.A.effort", t * (-r * c / (D * D)) / abs_roi},
      {"fault.f1.pi", pi * (a_term * D - r * b_term) / (D * D) / abs_roi},
      {"application.A.removal_cost.f1", v * (-r * (1 - theta) / (D * D)) / abs_roi},
      {"application.A.difficulty.f1.theta0",
       theta * ((-pi * W * D - r * (pi * W - v)) / (D * D)) / abs_roi},
      {"fault.f1.v_field", vf * ((pi * (1 - theta) * D - r * pi * theta) / (D * D)) / abs_roi},
  };

  bool pass = true;
  double worst = 0.0;
  for (const FactorSensitivity& f : rep.factors) {
    const double expected = analytic.at(f.factor);
    const double rel = std::abs(f.elasticity - expected) / std::abs(expected);
    worst = std::max(worst, rel);
    if (rel > 1e-4) pass = false;
  }
  std::ostringstream detail;
  detail << "sensitivity correctness: finite-difference elasticities match hand-derived "
            "partials at delta=1e-4 (worst relative deviation "
         << format_number(worst) << ", <= 1e-4 required)";
  report(8, pass, detail.str());
}

}  // namespace

int main() {
  criteria_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  std::cout << (failed == 0 ? "acceptance suite: all criteria passed"
                            : "acceptance suite: " + std::to_string(failed) +
                                  " criterion/criteria FAILED")
            << std::endl;
  return failed;
}
