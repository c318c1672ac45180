#pragma once
// Numerical exploration of open conjectures about purity under loss, and the
// known counterexamples that bound them.

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fockloss/check_report.hpp"
#include "fockloss/fock.hpp"

namespace fockloss {

enum class Disposition { no_violation_found, violation, proven_case_verified };

std::string_view disposition_name(Disposition d);

/// One conjecture evaluated for one state over a parameter grid.
struct ScanResult {
  std::string name;
  std::string state_id;
  std::vector<double> grid;
  std::vector<double> margins;     // one per grid point
  double tolerance = 0.0;
  double min_margin = 0.0;
  double argmin = 0.0;
  std::vector<double> violations;  // grid points confirmed as violations
  Disposition disposition = Disposition::no_violation_found;
};

/// Margin function of one grid parameter and its tolerance at that point.
struct MarginEval {
  double margin;
  double tolerance;
};
using MarginFn = std::function<MarginEval(double)>;

/// Evaluates `fn` on the grid. A point with margin < -tolerance is confirmed
/// by re-evaluating on a 10x finer local grid with a 10x tighter tolerance
/// before it is recorded; confirmed points make the disposition `violation`.
ScanResult run_scan(std::string name, std::string state_id, const std::vector<double>& grid,
                    const MarginFn& fn, bool proven = false);

/// P P'' - (P')^2 from the exact purity polynomial. Any real T is accepted;
/// the physical range is (0, 1).
MarginEval log_convexity_margin(const DensityOperator& rho1, double T);
ScanResult log_convexity_scan(const DensityOperator& rho1, const std::vector<double>& T_grid,
                              std::string state_id = {});

/// P''(T) >= 0 as a scan, for comparison with log-convexity.
ScanResult convexity_scan(const DensityOperator& rho1, const std::vector<double>& T_grid,
                          std::string state_id = {});

/// Cauchy-Schwarz in l = log(1-2T) over dark-port moments. Needs T < 1/2.
CheckReport ell_log_convexity_check(const DensityOperator& rho1, double T);

/// Which photon-number distribution of a two-mode operator plays the role of
/// the dark port. `input_modes` interferes the two modes on the inverse
/// balanced splitter first; `output_ports` reads mode 2 directly, treating
/// the operator as already expressed in the splitter's output modes.
enum class PhiBasis { input_modes, output_ports };

std::vector<double> dark_port_populations(const TwoModeOperator& phi, PhiBasis basis);

/// Tr[Phi l^N] Tr[Phi l^{N-2} N(N-1)] >= Tr[Phi l^{N-1} N]^2 in factored
/// moment form, so no negative power of lambda is ever evaluated.
CheckReport unfairness_witness(const TwoModeOperator& phi, double lambda, PhiBasis basis);

/// 2 q2 q0 - q1^2 >= 0 over the dark-port populations.
CheckReport lambda_zero_witness(const TwoModeOperator& phi, PhiBasis basis);

/// Normalized dark-port state of rho1 x rho1 weighted by sqrt(1-2T)^{N_-}.
/// Needs T <= 1/2. The result has cutoff 2c - 1.
DensityOperator dark_port_state(const DensityOperator& rho1, double T);

/// Tr[rho N(N-1)] / Tr[rho N]^2; empty when Tr[rho N] <= 1e-12.
std::optional<double> g2(const DensityOperator& rho);
/// Tr[rho a^dag^n a^n] / Tr[rho N]^n; empty when Tr[rho N] <= 1e-12.
std::optional<double> gn(const DensityOperator& rho, int n);

/// Margin g2(dark_port_state(rho1, T)) - 1; undefined points score +inf.
MarginEval dark_port_g2_margin(const DensityOperator& rho1, double T);

/// CSV: conjecture,state_id,T_or_lambda,margin.
void write_scan_csv(std::ostream& os, const std::vector<ScanResult>& scans);

}  // namespace fockloss
