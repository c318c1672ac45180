#pragma once

#include <string>
#include <vector>

namespace fockloss {

/// Outcome of one numerical check. The sign convention is uniform: `margin`
/// is how far the claimed relation is from failing (rhs - lhs for lhs <= rhs,
/// minus the deviation for equalities), and the check passes iff
/// margin >= -tolerance.
struct CheckReport {
  std::string check_name;
  std::string state_id;
  std::string params;  // "key=value" pairs joined by ';'
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string anchor;  // the relation being checked, in words

  /// Fills margin/pass for lhs <= rhs.
  static CheckReport inequality(std::string name, double lhs, double rhs, double tolerance,
                                std::string anchor);
  /// Fills margin/pass for lhs == rhs.
  static CheckReport equality(std::string name, double lhs, double rhs, double tolerance,
                              std::string anchor);

  CheckReport& with_state(std::string id);
  CheckReport& with_params(std::string p);
};

/// Running tallies over a batch of reports.
struct CheckSummary {
  int run = 0;
  int passed = 0;
  int failed = 0;
  double worst_margin = 0.0;

  void add(const CheckReport& r);
  void add(const std::vector<CheckReport>& rs);
  bool ok() const { return failed == 0; }
};

}  // namespace fockloss
