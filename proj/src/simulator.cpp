#include "qaecon/simulator.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "qaecon/rng.hpp"

namespace qaecon {

namespace {

constexpr std::uint64_t kBlockSize = 8192;

// Scenario flattened to index-addressed arrays for the replication loop.
struct CompiledScenario {
  std::size_t n_faults = 0;
  std::size_t n_apps = 0;
  std::vector<double> detect_prob;  // [app * n_faults + fault] = 1 - theta
  std::vector<double> removal;      // [app * n_faults + fault] = v_x(i)
  std::vector<std::vector<std::uint32_t>> predecessors;  // fault -> indices
  std::vector<double> pi;
  std::vector<double> field_cost;
  double deterministic_direct = 0.0;
};

CompiledScenario compile(const Scenario& scenario) {
  CompiledScenario c;
  c.n_faults = scenario.faults.size();
  c.n_apps = scenario.applications.size();
  c.detect_prob.resize(c.n_apps * c.n_faults);
  c.removal.resize(c.n_apps * c.n_faults);
  c.predecessors.resize(c.n_faults);
  c.pi.resize(c.n_faults);
  c.field_cost.resize(c.n_faults);

  for (std::size_t i = 0; i < c.n_faults; ++i) {
    const FaultSpec& fault = scenario.faults[i];
    c.pi[i] = fault.pi;
    c.field_cost[i] = fault.field_cost();
    for (const std::string& pred_id : fault.predecessors)
      c.predecessors[i].push_back(static_cast<std::uint32_t>(scenario.fault_index(pred_id)));
  }
  for (std::size_t x = 0; x < c.n_apps; ++x) {
    const TechniqueApplication& app = scenario.applications[x];
    c.deterministic_direct += app.setup_cost + app.exec_rate * app.effort;
    for (std::size_t i = 0; i < c.n_faults; ++i) {
      c.detect_prob[x * c.n_faults + i] = 1.0 - app.difficulty_for(scenario.faults[i]);
      c.removal[x * c.n_faults + i] = app.removal_cost_for(scenario.faults[i].id);
    }
  }
  return c;
}

struct BlockAccumulator {
  double sum_direct = 0.0, sum_direct_sq = 0.0;
  double sum_future = 0.0, sum_future_sq = 0.0;
  double sum_revenue = 0.0, sum_revenue_sq = 0.0;
  std::uint64_t detected = 0;
  std::vector<std::uint64_t> detected_by;  // [fault * n_apps + app]
  std::vector<std::uint64_t> predecessor_first;
  std::vector<std::uint64_t> escape;

  void init(std::size_t n_faults, std::size_t n_apps) {
    detected_by.assign(n_faults * n_apps, 0);
    predecessor_first.assign(n_faults, 0);
    escape.assign(n_faults, 0);
  }
};

void run_block(const CompiledScenario& c, std::uint64_t seed, std::uint64_t first,
               std::uint64_t last, BlockAccumulator& acc) {
  std::vector<unsigned char> field(c.n_faults);
  std::vector<unsigned char> resolved(c.n_faults);

  for (std::uint64_t rep = first; rep < last; ++rep) {
    SplitMix64 rng(stream_seed(seed, rep));

    // One field-failure draw per fault, shared by the revenue and future-cost
    // legs (common random numbers).
    for (std::size_t i = 0; i < c.n_faults; ++i) {
      field[i] = rng.next_unit() < c.pi[i] ? 1 : 0;
      resolved[i] = 0;
    }

    double direct = 0.0, future = 0.0, revenue = 0.0;
    for (std::size_t x = 0; x < c.n_apps; ++x) {
      const double* detect = &c.detect_prob[x * c.n_faults];
      const double* removal = &c.removal[x * c.n_faults];
      for (std::size_t i = 0; i < c.n_faults; ++i) {
        if (resolved[i]) continue;
        bool pred_hit = false;
        for (std::uint32_t j : c.predecessors[i])
          if (rng.next_unit() < detect[j]) pred_hit = true;
        const bool own_hit = rng.next_unit() < detect[i];
        if (own_hit) {
          direct += removal[i];
          if (field[i]) revenue += c.field_cost[i];
          acc.detected_by[i * c.n_apps + x] += 1;
          acc.detected += 1;
          resolved[i] = 1;
        } else if (pred_hit) {
          acc.predecessor_first[i] += 1;
          resolved[i] = 1;
        }
      }
    }
    for (std::size_t i = 0; i < c.n_faults; ++i) {
      if (resolved[i]) continue;
      acc.escape[i] += 1;
      if (field[i]) future += c.field_cost[i];
    }

    acc.sum_direct += direct;
    acc.sum_direct_sq += direct * direct;
    acc.sum_future += future;
    acc.sum_future_sq += future * future;
    acc.sum_revenue += revenue;
    acc.sum_revenue_sq += revenue * revenue;
  }
}

// Sample standard error of the mean from raw sums; zero for n == 1.
double standard_error(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double variance = (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  if (variance < 0.0) variance = 0.0;  // rounding guard
  return std::sqrt(variance / static_cast<double>(n));
}

}  // namespace

double SimulationResult::ci_half_width(double standard_error) const {
  return normal_quantile(0.5 + confidence_level / 2.0) * standard_error;
}

unsigned worker_count_from_env() {
  if (const char* env = std::getenv("QAECON_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

SimulationResult simulate(const Scenario& scenario, const SimulationConfig& config,
                          unsigned workers) {
  if (config.replications == 0) throw std::domain_error("simulate: replications must be >= 1");
  if (!(config.confidence_level > 0.0 && config.confidence_level < 1.0))
    throw std::domain_error("simulate: confidence level outside (0,1)");
  require_valid(scenario);
  if (workers == 0) workers = worker_count_from_env();

  const CompiledScenario compiled = compile(scenario);
  const std::uint64_t n = config.replications;
  const std::uint64_t n_blocks = (n + kBlockSize - 1) / kBlockSize;

  std::vector<BlockAccumulator> blocks(n_blocks);
  for (auto& b : blocks) b.init(compiled.n_faults, compiled.n_apps);

  std::atomic<std::uint64_t> next_block{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      const std::uint64_t first = b * kBlockSize;
      const std::uint64_t last = std::min(n, first + kBlockSize);
      run_block(compiled, config.seed, first, last, blocks[b]);
    }
  };

  if (workers <= 1 || n_blocks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned spawn = static_cast<unsigned>(
        std::min<std::uint64_t>(workers, n_blocks));
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Reduce in block-index order: sums are independent of which worker ran
  // which block.
  BlockAccumulator total;
  total.init(compiled.n_faults, compiled.n_apps);
  for (const BlockAccumulator& b : blocks) {
    total.sum_direct += b.sum_direct;
    total.sum_direct_sq += b.sum_direct_sq;
    total.sum_future += b.sum_future;
    total.sum_future_sq += b.sum_future_sq;
    total.sum_revenue += b.sum_revenue;
    total.sum_revenue_sq += b.sum_revenue_sq;
    total.detected += b.detected;
    for (std::size_t k = 0; k < total.detected_by.size(); ++k)
      total.detected_by[k] += b.detected_by[k];
    for (std::size_t i = 0; i < compiled.n_faults; ++i) {
      total.predecessor_first[i] += b.predecessor_first[i];
      total.escape[i] += b.escape[i];
    }
  }

  const double dn = static_cast<double>(n);
  SimulationResult result;
  result.mean_direct = compiled.deterministic_direct + total.sum_direct / dn;
  result.mean_future = total.sum_future / dn;
  result.mean_revenue = total.sum_revenue / dn;
  result.se_direct = standard_error(total.sum_direct, total.sum_direct_sq, n);
  result.se_future = standard_error(total.sum_future, total.sum_future_sq, n);
  result.se_revenue = standard_error(total.sum_revenue, total.sum_revenue_sq, n);
  result.mean_detected = static_cast<double>(total.detected) / dn;
  result.replications = n;
  result.seed = config.seed;
  result.confidence_level = config.confidence_level;

  result.per_fault.reserve(compiled.n_faults);
  for (std::size_t i = 0; i < compiled.n_faults; ++i) {
    EventFrequencies freq;
    freq.fault_id = scenario.faults[i].id;
    for (std::size_t x = 0; x < compiled.n_apps; ++x)
      freq.detected_by.emplace_back(
          scenario.applications[x].id,
          static_cast<double>(total.detected_by[i * compiled.n_apps + x]) / dn);
    freq.predecessor_first = static_cast<double>(total.predecessor_first[i]) / dn;
    freq.escape = static_cast<double>(total.escape[i]) / dn;
    result.per_fault.push_back(std::move(freq));
  }
  return result;
}

double efficiency(const SimulationResult& result, const Scenario& scenario) {
  double total_effort = 0.0;
  for (const TechniqueApplication& app : scenario.applications) total_effort += app.effort;
  if (!(total_effort > 0.0)) throw std::domain_error("efficiency undefined: total effort is zero");
  return result.mean_detected / total_effort;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p outside (0,1)");

  // Acklam's rational approximation.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley refinement against the exact CDF.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

}  // namespace qaecon
