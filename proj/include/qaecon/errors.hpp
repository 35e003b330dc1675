#pragma once

#include <stdexcept>
#include <string>

namespace qaecon {

// Unknown fault/application/calibration key.
class lookup_error : public std::out_of_range {
 public:
  explicit lookup_error(const std::string& what) : std::out_of_range(what) {}
};

// Raised by operations that require a well-formed scenario. The full issue
// list is available through validate_scenario(); the message carries a
// one-line summary per issue.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// ROI requested with direct + future == 0.
class undefined_roi_error : public std::domain_error {
 public:
  explicit undefined_roi_error(const std::string& what) : std::domain_error(what) {}
};

// Budget that cannot be met by any allocation within its bounds.
class infeasible_budget_error : public std::domain_error {
 public:
  explicit infeasible_budget_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qaecon
