#include "fockloss/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace fockloss {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os_ << ',';
    os_ << csv_field(fields[i]);
  }
  os_ << '\n';
}

std::vector<std::string> report_fields(const CheckReport& r) {
  return {r.check_name,           r.state_id,           r.params,
          format_double(r.lhs),   format_double(r.rhs), format_double(r.margin),
          format_double(r.tolerance), r.pass ? "true" : "false"};
}

void write_reports_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
  CsvWriter w(os);
  w.row(report_columns());
  for (const auto& r : reports) w.row(report_fields(r));
}

}  // namespace fockloss
