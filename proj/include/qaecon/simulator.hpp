#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qaecon/model.hpp"

namespace qaecon {

struct SimulationConfig {
  std::uint64_t replications = 100000;
  std::uint64_t seed = 1;
  double confidence_level = 0.95;
};

// Empirical counterpart of FaultEventProbabilities.
struct EventFrequencies {
  std::string fault_id;
  std::vector<std::pair<std::string, double>> detected_by;  // application order
  double predecessor_first = 0.0;
  double escape = 0.0;
};

struct SimulationResult {
  double mean_direct = 0.0;
  double mean_future = 0.0;
  double mean_revenue = 0.0;
  double se_direct = 0.0;
  double se_future = 0.0;
  double se_revenue = 0.0;
  double mean_detected = 0.0;  // faults detected in-house per replication
  std::vector<EventFrequencies> per_fault;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  double confidence_level = 0.95;

  // Normal-approximation half width at the configured confidence level.
  double ci_half_width(double standard_error) const;
};

// Worker count for parallel replication: QAECON_THREADS when set (floored at
// 1), otherwise the hardware concurrency.
unsigned worker_count_from_env();

// Samples the defect lifecycle per replication: walk the applications in
// order; for each unresolved fault draw the predecessor detections, then the
// fault's own detection. An own detection charges the application's removal
// cost and, when the pre-drawn field-failure indicator is set, accrues the
// field cost as revenue. A predecessor hit resolves the chain with no charge
// for this fault. Faults still unresolved after the last application incur
// the field cost as future cost when the same indicator is set. Setup and
// execution costs are charged deterministically every replication.
//
// Replication r draws from its own stream derived from (seed, r), and block
// sums are reduced in index order, so results are bit-identical for any
// worker count. workers == 0 means worker_count_from_env().
SimulationResult simulate(const Scenario& scenario, const SimulationConfig& config,
                          unsigned workers = 0);

// Detected faults per effort unit. Throws when the plan spends no effort.
double efficiency(const SimulationResult& result, const Scenario& scenario);

// Inverse standard normal CDF (Acklam's approximation plus one Halley step).
double normal_quantile(double p);

}  // namespace qaecon
