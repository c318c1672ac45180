#pragma once
// Minimal CSV emission: ',' delimiter, '.' decimal, LF line endings, and
// shortest round-trip formatting of doubles.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fockloss/check_report.hpp"

namespace fockloss {

std::string format_double(double v);

/// Quotes a field when it contains ',', '"' or a newline.
std::string csv_field(std::string_view s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{"check_name", "state_id", "params", "lhs",
                                             "rhs",        "margin",   "tolerance", "pass"};
  return cols;
}

std::vector<std::string> report_fields(const CheckReport& r);

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports);

}  // namespace fockloss
