#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qaecon/model.hpp"

namespace qaecon {

// Equal-weight combination of study results: every data set counts once.
struct SummaryStats {
  double lowest = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double highest = 0.0;

  // lowest <= median <= highest and lowest <= mean <= highest.
  bool ordered() const;
};

// One survey figure. Components are individually optional because a few
// sources publish only a subset (e.g. a mean and a median, or a min/mean/max
// triple); absent components are never invented.
struct CalibrationEntry {
  std::string key;
  std::string unit;
  std::optional<double> lowest;
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> highest;
  std::string note;

  bool complete() const { return lowest && mean && median && highest; }
  SummaryStats stats() const;  // throws lookup_error when incomplete
};

// The embedded survey dataset. Keys are hierarchical
// (test.functional.effectiveness, inspection.efficiency, ...).
const std::vector<CalibrationEntry>& builtin_dataset();
const CalibrationEntry& builtin_entry(const std::string& key);
std::vector<std::string> builtin_keys();

// min / arithmetic mean / median (mean of the two middle elements for even
// length) / max. Empty input is a domain error.
SummaryStats summary_stats(std::span<const double> values);

struct OutlierSplit {
  std::vector<double> kept;
  std::vector<double> removed;
};

// Box-plot outlier elimination: Tukey fences at Q1 - 1.5*IQR and
// Q3 + 1.5*IQR with median-exclusive quartiles. Values exactly on a fence are
// kept. Requires at least 4 values.
OutlierSplit iqr_outlier_filter(std::span<const double> values);

// difficulty% = 100 - effectiveness%; lowest/highest swap sides.
SummaryStats derive_difficulty_stats(const SummaryStats& effectiveness_percent);

// Function-point based effort rules (Jones).
enum class TestPhase { Unit, Function, System, Field };
double setup_cost_per_fp(TestPhase phase, double size_fp);      // staff-hours
double execution_cost_per_fp(TestPhase phase, double size_fp);  // staff-hours

// Fixed inspection setup (Hewlett-Packard experience): planning plus
// kick-off. Team-size scaling is deliberately not modeled.
double inspection_planning_effort();  // 2.0 staff-hours
double inspection_kickoff_effort();   // 0.5 staff-hours
double inspection_fixed_setup();      // 2.5 staff-hours

// pi_k = first * ratio^(k-1), k = 1..n (Adams-style geometric progression of
// fault failure probabilities).
std::vector<double> geometric_failure_probabilities(std::size_t n, double first, double ratio);

// Severity shares over Jones's four levels (1: inoperable, 2: major,
// 3: minor, 4: superficial). Shares sum to 1.
struct SeverityDistribution {
  std::vector<std::pair<int, double>> levels;

  std::string check() const;  // empty when well-formed
};
SeverityDistribution jones_severity_distribution();      // 10/40/30/20 %
SeverityDistribution jones_severity_distribution_alt();  // 3/15/60/22 %

// Expected effect cost under a severity distribution; the level -> cost
// mapping is user-supplied. Throws lookup_error for a level without a cost.
double effect_cost_expectation(const SeverityDistribution& dist,
                               const std::map<int, double>& unit_costs);

// Observed behaviour of bug-finding tools, as fractions.
struct StaticAnalysisProfile {
  double false_positive_lowest = 0.0;
  double false_positive_mean = 0.0;
  double false_positive_highest = 0.0;
  double effectiveness_overall = 0.0;
  double effectiveness_severest = 0.0;
  double effectiveness_second_severest = 0.0;
  double effectiveness_lower_lowest = 0.0;
  double effectiveness_lower_highest = 0.0;
};
StaticAnalysisProfile static_analysis_profile();

// Per-defect-type difficulty percentages (Basili-Selby defect taxonomy).
struct DefectTypeDifficulty {
  double functional_testing = 0.0;
  double structural_testing = 0.0;
  double testing_overall = 0.0;
  double inspection = 0.0;
};
// Keys: initialisation, control, data, computation, interface, cosmetic.
const std::map<std::string, DefectTypeDifficulty>& basili_selby_difficulty_profile();

// The single place where survey percentages become model probabilities.
double fraction_from_percent(double percent);
DifficultyCurve curve_from_difficulty_percent(double percent);

// Staff-time conversions used by the survey figures.
inline constexpr double kStaffHoursPerStaffDay = 6.0;
inline constexpr double kStaffMinutesPerStaffHour = 60.0;

// Advisory reading-rate constants; deviation effects are not modeled.
inline constexpr double kOptimalInspectionPagesPerHour = 1.0;
inline constexpr double kWordsPerInspectionPage = 300.0;

// CSV round trip: key,unit,lowest,mean,median,highest,source_note.
void export_dataset_csv(std::ostream& out);
std::vector<CalibrationEntry> read_dataset_csv(std::istream& in);

}  // namespace qaecon
