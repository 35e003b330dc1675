#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qaecon/format.hpp"

namespace qaecon {

// One output line: quantity, value, unit, provenance. Values are stored
// pre-rendered so non-numeric cells (e.g. an undefined ROI) fit the same row.
struct ReportRow {
  std::string quantity;
  std::string value;
  std::string unit;
  std::string provenance;

  static ReportRow number(std::string quantity, double value, std::string unit,
                          std::string provenance) {
    return ReportRow{std::move(quantity), format_number(value), std::move(unit),
                     std::move(provenance)};
  }
  static ReportRow text(std::string quantity, std::string value, std::string unit,
                        std::string provenance) {
    return ReportRow{std::move(quantity), std::move(value), std::move(unit),
                     std::move(provenance)};
  }
};

// CSV with header quantity,value,unit,provenance; '.' decimals, LF endings.
void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);

}  // namespace qaecon
