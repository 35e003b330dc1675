#include "qaecon/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "qaecon/format.hpp"

namespace qaecon {

bool SummaryStats::ordered() const {
  return lowest <= median && median <= highest && lowest <= mean && mean <= highest;
}

SummaryStats CalibrationEntry::stats() const {
  if (!complete())
    throw lookup_error("calibration entry " + key + " has no complete quadruple");
  return SummaryStats{*lowest, *mean, *median, *highest};
}

namespace {

CalibrationEntry quad(std::string key, std::string unit, double lowest, double mean,
                      double median, double highest, std::string note) {
  return CalibrationEntry{std::move(key), std::move(unit), lowest, mean,
                          median,         highest,         std::move(note)};
}

std::vector<CalibrationEntry> make_dataset() {
  std::vector<CalibrationEntry> d;

  // Dynamic testing.
  d.push_back(quad("test.functional.effectiveness", "%", 33, 53.26, 48.85, 88,
                   "combined studies of functional test effectiveness"));
  d.push_back(quad("test.structural.effectiveness", "%", 17, 54.78, 56.85, 89,
                   "combined studies of structural test effectiveness"));
  d.push_back(quad("test.all.effectiveness", "%", 7.2, 49.85, 47, 89,
                   "combined studies of test effectiveness; all techniques"));
  d.push_back(quad("test.functional.efficiency", "defects/staff-hour", 1.22, 1.72, 1.71, 2.47,
                   "combined studies of functional test efficiency"));
  d.push_back(quad("test.structural.efficiency", "defects/staff-hour", 0.22, 1.5, 2.07, 2.2,
                   "combined studies of structural test efficiency"));
  d.push_back(quad("test.all.efficiency", "defects/staff-hour", 0.04, 1.26, 1.5, 2.47,
                   "combined studies of test efficiency; all techniques"));
  d.push_back(quad("test.functional.difficulty", "%", 12, 46.74, 51.15, 67,
                   "first approximation: 100% minus functional test effectiveness"));
  d.push_back(quad("test.structural.difficulty", "%", 11, 45.22, 43.15, 83,
                   "first approximation: 100% minus structural test effectiveness"));
  d.push_back(quad("test.all.difficulty", "%", 11, 50.15, 53, 92.8,
                   "first approximation: 100% minus test effectiveness; all techniques"));
  d.push_back(quad("test.unit.removal_cost", "staff-hours/defect", 1.5, 3.46, 2.5, 6,
                   "removal costs observed during unit test"));
  d.push_back(quad("test.integration.removal_cost", "staff-hours/defect", 3.06, 5.42, 4.55, 9.5,
                   "removal costs observed during integration test"));
  d.push_back(quad("test.system.removal_cost", "staff-hours/defect", 2.82, 8.37, 6.2, 20,
                   "removal costs observed during system test; function and system "
                   "test phases combined"));
  d.push_back(quad("test.all.removal_cost", "staff-hours/defect", 0.2, 8, 4.95, 52,
                   "removal costs across all test phases"));

  // Reviews and inspections.
  d.push_back(quad("inspection.design.preparation.execution_cost", "staff-hours/KLOC", 3.6,
                   4.68, 4.68, 5.76, "design inspection preparation effort"));
  d.push_back(quad("inspection.design.meeting.execution_cost", "staff-hours/KLOC", 3.6, 4.07,
                   4.07, 4.54, "design inspection meeting effort"));
  d.push_back(quad("inspection.design.all.execution_cost", "staff-hours/KLOC", 7.2, 8.75, 8.75,
                   10.3, "design inspection total execution effort"));
  d.push_back(quad("inspection.code.preparation.execution_cost", "staff-hours/KLOC", 4.91, 6.49,
                   6.67, 7.9, "code inspection preparation effort"));
  d.push_back(quad("inspection.code.meeting.execution_cost", "staff-hours/KLOC", 3.32, 7.02, 4.4,
                   13.33, "code inspection meeting effort"));
  d.push_back(quad("inspection.code.all.execution_cost", "staff-hours/KLOC", 6.67, 13.2, 11.15,
                   22, "code inspection total execution effort"));
  d.push_back(quad("inspection.effectiveness", "%", 8.5, 34.14, 30, 92.7,
                   "combined studies of inspection effectiveness"));
  d.push_back(quad("inspection.efficiency", "defects/staff-hour", 0.16, 1.87, 1.18, 6,
                   "combined studies of inspection efficiency"));
  d.push_back(quad("inspection.difficulty", "%", 7.3, 65.86, 70, 91.5,
                   "first approximation: 100% minus inspection effectiveness"));
  d.push_back(quad("inspection.requirements.removal_cost", "staff-hours/defect", 0.05, 1.06, 1.1,
                   2, "removal costs of requirements inspections"));
  d.push_back(quad("inspection.design.removal_cost", "staff-hours/defect", 0.07, 2.31, 0.83, 6.3,
                   "removal costs of design inspections; only four data points"));
  d.push_back(quad("inspection.coding.removal_cost", "staff-hours/defect", 0.17, 2.71, 1.95, 6.3,
                   "removal costs of code inspections"));
  d.push_back(quad("inspection.all.removal_cost", "staff-hours/defect", 0.05, 1.91, 1.2, 7.5,
                   "removal costs across all inspection phases"));

  // Technique-independent defect figures.
  d.push_back(quad("field.removal_cost", "staff-hours/defect", 3.9, 57.42, 27.6, 250,
                   "removal costs of field defects; after box-plot elimination of two "
                   "strong outliers the mean is 27.24 and the median 27"));
  {
    CalibrationEntry e;
    e.key = "field.removal_cost.post_outlier";
    e.unit = "staff-hours/defect";
    e.mean = 27.24;
    e.median = 27;
    e.note = "field defect removal costs after box-plot elimination of two strong "
             "outliers; raw study values were not retained";
    d.push_back(std::move(e));
  }

  // Cross-technique rules of thumb.
  {
    CalibrationEntry e;
    e.key = "test.difficulty.survey_average";
    e.unit = "fraction";
    e.mean = 0.45;
    e.note = "cross-study average difficulty of tests";
    d.push_back(std::move(e));
  }
  {
    CalibrationEntry e;
    e.key = "inspection.difficulty.survey_average";
    e.unit = "fraction";
    e.mean = 0.65;
    e.note = "cross-study average difficulty of inspections";
    d.push_back(std::move(e));
  }

  // Static analysis tools.
  {
    CalibrationEntry e;
    e.key = "static_analysis.false_positive_ratio";
    e.unit = "%";
    e.lowest = 31;
    e.mean = 66;
    e.highest = 96;
    e.note = "ratio of warnings that are not real defects; three Java bug-finding tools";
    d.push_back(std::move(e));
  }
  {
    CalibrationEntry e;
    e.key = "static_analysis.effectiveness.overall";
    e.unit = "%";
    e.mean = 81;
    e.note = "share of known defects found after eliminating false positives";
    d.push_back(std::move(e));
  }
  {
    CalibrationEntry e;
    e.key = "static_analysis.effectiveness.severest";
    e.unit = "%";
    e.mean = 22;
    e.note = "effectiveness on the severest defects";
    d.push_back(std::move(e));
  }
  {
    CalibrationEntry e;
    e.key = "static_analysis.effectiveness.second_severest";
    e.unit = "%";
    e.mean = 20;
    e.note = "effectiveness on the second-severest defects";
    d.push_back(std::move(e));
  }
  {
    CalibrationEntry e;
    e.key = "static_analysis.effectiveness.lower_severities";
    e.unit = "%";
    e.lowest = 70;
    e.highest = 88;
    e.note = "effectiveness range on lower-severity defects";
    d.push_back(std::move(e));
  }

  return d;
}

}  // namespace

const std::vector<CalibrationEntry>& builtin_dataset() {
  static const std::vector<CalibrationEntry> dataset = make_dataset();
  return dataset;
}

const CalibrationEntry& builtin_entry(const std::string& key) {
  for (const CalibrationEntry& e : builtin_dataset())
    if (e.key == key) return e;
  std::ostringstream msg;
  msg << "unknown calibration key: " << key << "; available keys:";
  for (const CalibrationEntry& e : builtin_dataset()) msg << "\n  " << e.key;
  throw lookup_error(msg.str());
}

std::vector<std::string> builtin_keys() {
  std::vector<std::string> keys;
  keys.reserve(builtin_dataset().size());
  for (const CalibrationEntry& e : builtin_dataset()) keys.push_back(e.key);
  return keys;
}

SummaryStats summary_stats(std::span<const double> values) {
  if (values.empty()) throw std::domain_error("summary_stats: empty value list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  SummaryStats s;
  s.lowest = sorted.front();
  s.highest = sorted.back();
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / static_cast<double>(sorted.size());
  const std::size_t n = sorted.size();
  s.median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

namespace {

// Median of an already sorted range.
double median_of(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

OutlierSplit iqr_outlier_filter(std::span<const double> values) {
  if (values.size() < 4)
    throw std::domain_error("iqr_outlier_filter: needs at least 4 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  // Median-exclusive halves: an odd-length middle element belongs to neither.
  const std::size_t n = sorted.size();
  const std::size_t half = n / 2;
  const double q1 = median_of(std::span(sorted).first(half));
  const double q3 = median_of(std::span(sorted).last(half));
  const double iqr = q3 - q1;
  const double lower_fence = q1 - 1.5 * iqr;
  const double upper_fence = q3 + 1.5 * iqr;

  OutlierSplit split;
  for (double v : sorted) {
    if (v < lower_fence || v > upper_fence)
      split.removed.push_back(v);
    else
      split.kept.push_back(v);
  }
  return split;
}

SummaryStats derive_difficulty_stats(const SummaryStats& effectiveness_percent) {
  const SummaryStats& e = effectiveness_percent;
  for (double v : {e.lowest, e.mean, e.median, e.highest})
    if (!(v >= 0.0 && v <= 100.0))
      throw std::domain_error("derive_difficulty_stats: effectiveness outside [0,100]");
  // Complement swaps the bounds.
  return SummaryStats{100.0 - e.highest, 100.0 - e.mean, 100.0 - e.median, 100.0 - e.lowest};
}

double setup_cost_per_fp(TestPhase phase, double size_fp) {
  if (!(size_fp >= 0.0)) throw std::domain_error("setup_cost_per_fp: negative size");
  switch (phase) {
    case TestPhase::Unit: return 0.50 * size_fp;
    case TestPhase::Function: return 0.75 * size_fp;
    case TestPhase::System: return 1.00 * size_fp;
    case TestPhase::Field: return 0.50 * size_fp;
  }
  throw std::logic_error("setup_cost_per_fp: unknown phase");
}

double execution_cost_per_fp(TestPhase phase, double size_fp) {
  if (!(size_fp >= 0.0)) throw std::domain_error("execution_cost_per_fp: negative size");
  switch (phase) {
    case TestPhase::Unit: return 0.25 * size_fp;
    case TestPhase::Function:
    case TestPhase::System:
    case TestPhase::Field: return 0.50 * size_fp;
  }
  throw std::logic_error("execution_cost_per_fp: unknown phase");
}

double inspection_planning_effort() { return 2.0; }
double inspection_kickoff_effort() { return 0.5; }
double inspection_fixed_setup() {
  return inspection_planning_effort() + inspection_kickoff_effort();
}

std::vector<double> geometric_failure_probabilities(std::size_t n, double first, double ratio) {
  if (!(first >= 0.0 && first <= 1.0))
    throw std::domain_error("geometric_failure_probabilities: first outside [0,1]");
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw std::domain_error("geometric_failure_probabilities: ratio outside (0,1]");
  std::vector<double> probabilities;
  probabilities.reserve(n);
  double term = first;
  for (std::size_t k = 0; k < n; ++k) {
    probabilities.push_back(term);
    term *= ratio;
  }
  return probabilities;
}

std::string SeverityDistribution::check() const {
  double total = 0.0;
  for (const auto& [level, share] : levels) {
    if (level < 1 || level > 4) return "level id outside 1..4";
    if (!(share >= 0.0 && share <= 1.0)) return "share outside [0,1]";
    total += share;
  }
  if (std::abs(total - 1.0) > 1e-9) return "shares do not sum to 1";
  return {};
}

SeverityDistribution jones_severity_distribution() {
  return SeverityDistribution{{{1, 0.10}, {2, 0.40}, {3, 0.30}, {4, 0.20}}};
}

SeverityDistribution jones_severity_distribution_alt() {
  return SeverityDistribution{{{1, 0.03}, {2, 0.15}, {3, 0.60}, {4, 0.22}}};
}

double effect_cost_expectation(const SeverityDistribution& dist,
                               const std::map<int, double>& unit_costs) {
  if (auto problem = dist.check(); !problem.empty())
    throw std::domain_error("effect_cost_expectation: " + problem);
  double expected = 0.0;
  for (const auto& [level, share] : dist.levels) {
    auto it = unit_costs.find(level);
    if (it == unit_costs.end())
      throw lookup_error("effect_cost_expectation: no unit cost for severity level " +
                         std::to_string(level));
    expected += share * it->second;
  }
  return expected;
}

StaticAnalysisProfile static_analysis_profile() {
  StaticAnalysisProfile p;
  p.false_positive_lowest = fraction_from_percent(31);
  p.false_positive_mean = fraction_from_percent(66);
  p.false_positive_highest = fraction_from_percent(96);
  p.effectiveness_overall = fraction_from_percent(81);
  p.effectiveness_severest = fraction_from_percent(22);
  p.effectiveness_second_severest = fraction_from_percent(20);
  p.effectiveness_lower_lowest = fraction_from_percent(70);
  p.effectiveness_lower_highest = fraction_from_percent(88);
  return p;
}

const std::map<std::string, DefectTypeDifficulty>& basili_selby_difficulty_profile() {
  static const std::map<std::string, DefectTypeDifficulty> profile = {
      {"initialisation", {25.0, 53.8, 38.5, 35.4}},
      {"control", {33.3, 51.2, 47.2, 57.2}},
      {"data", {71.7, 73.2, 74.7, 79.3}},
      {"computation", {35.8, 41.2, 75.4, 29.1}},
      {"interface", {69.3, 75.4, 66.9, 53.3}},
      {"cosmetic", {91.7, 92.3, 89.2, 83.3}},
  };
  return profile;
}

double fraction_from_percent(double percent) {
  if (!(percent >= 0.0 && percent <= 100.0))
    throw std::domain_error("fraction_from_percent: percent outside [0,100]");
  return percent / 100.0;
}

DifficultyCurve curve_from_difficulty_percent(double percent) {
  return DifficultyCurve::constant(fraction_from_percent(percent));
}

namespace {

std::string csv_cell(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

}  // namespace

void export_dataset_csv(std::ostream& out) {
  out << "key,unit,lowest,mean,median,highest,source_note\n";
  for (const CalibrationEntry& e : builtin_dataset()) {
    out << e.key << ',' << e.unit << ',' << csv_cell(e.lowest) << ',' << csv_cell(e.mean) << ','
        << csv_cell(e.median) << ',' << csv_cell(e.highest) << ',' << e.note << '\n';
  }
}

std::vector<CalibrationEntry> read_dataset_csv(std::istream& in) {
  std::vector<CalibrationEntry> entries;
  std::string line;
  if (!std::getline(in, line) || line != "key,unit,lowest,mean,median,highest,source_note")
    throw std::runtime_error("calibration csv: missing or unexpected header");

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    // Notes are comma-free by construction; the first six commas delimit.
    for (int k = 0; k < 6; ++k) {
      const std::size_t pos = line.find(',', start);
      if (pos == std::string::npos)
        throw std::runtime_error("calibration csv: short row: " + line);
      cells.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    cells.push_back(line.substr(start));

    CalibrationEntry e;
    e.key = cells[0];
    e.unit = cells[1];
    auto cell = [&](const std::string& text) -> std::optional<double> {
      if (text.empty()) return std::nullopt;
      return parse_number(text);
    };
    e.lowest = cell(cells[2]);
    e.mean = cell(cells[3]);
    e.median = cell(cells[4]);
    e.highest = cell(cells[5]);
    e.note = cells[6];
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace qaecon
