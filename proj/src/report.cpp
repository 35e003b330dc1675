#include "qaecon/report.hpp"

#include <ostream>

namespace qaecon {

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "quantity,value,unit,provenance\n";
  for (const ReportRow& row : rows)
    out << row.quantity << ',' << row.value << ',' << row.unit << ',' << row.provenance << '\n';
}

}  // namespace qaecon
