#include "fockloss/check_report.hpp"

#include <algorithm>
#include <cmath>

namespace fockloss {

CheckReport CheckReport::inequality(std::string name, double lhs, double rhs, double tolerance,
                                    std::string anchor) {
  CheckReport r;
  r.check_name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.margin) && r.margin >= -tolerance;
  r.anchor = std::move(anchor);
  return r;
}

CheckReport CheckReport::equality(std::string name, double lhs, double rhs, double tolerance,
                                  std::string anchor) {
  CheckReport r;
  r.check_name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.pass = std::isfinite(r.margin) && r.margin >= -tolerance;
  r.anchor = std::move(anchor);
  return r;
}

CheckReport& CheckReport::with_state(std::string id) {
  state_id = std::move(id);
  return *this;
}

CheckReport& CheckReport::with_params(std::string p) {
  params = std::move(p);
  return *this;
}

void CheckSummary::add(const CheckReport& r) {
  if (run == 0) {
    worst_margin = r.margin;
  } else {
    worst_margin = std::min(worst_margin, r.margin);
  }
  ++run;
  if (r.pass) {
    ++passed;
  } else {
    ++failed;
  }
}

void CheckSummary::add(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs) add(r);
}

}  // namespace fockloss
