#pragma once
// The pure-loss channel E_T: interfere with vacuum on B(T), discard port 2.

#include <vector>

#include "fockloss/check_report.hpp"
#include "fockloss/fock.hpp"

namespace fockloss {

/// Transmission probability. Physical values lie in [0, 1]; other reals are
/// accepted only where a quantity is polynomial in T and marked nonphysical.
struct LossParameter {
  double T = 1.0;

  bool is_physical() const { return T >= 0.0 && T <= 1.0; }

  static LossParameter from_damping(double gamma, double t);  // e^{-gamma t}
  static LossParameter from_angle(double theta);              // cos^2(theta/2)
  static LossParameter from_efficiency(double eta);           // eta
};

/// Kraus operators K_n(T) = sqrt(T)^N (sqrt(1-T) a)^n / sqrt(n!), n < cutoff.
struct KrausSet {
  double T;
  std::vector<RMatrix> ops;
};

/// Throws DomainError for T outside [0, 1].
KrausSet kraus_set(double T, int cutoff);

/// Alternative ordering (sqrt((1-T)/T) a)^n sqrt(T)^N / sqrt(n!). Requires T > 0.
KrausSet kraus_set_reordered(double T, int cutoff);

/// E_T[rho]. Kraus sum for T in [0, 1]. Outside that range the Fock-diagonal
/// binomial formula is used, which is polynomial in T; operators with
/// off-diagonal elements are rejected there (DomainError).
DensityOperator apply_loss(const DensityOperator& rho, double T);

/// Pure input: rho_T for |psi><psi|.
DensityOperator apply_loss(const PureState& psi, double T);

/// d rho_T / dT = -(1/2T)(2 a rho_T a^dag - N rho_T - rho_T N). Throws
/// DomainError at T = 0.
CMatrix loss_generator(const DensityOperator& rho_T, double T);

/// || E_{T1}[E_{T2}[rho]] - E_{T1 T2}[rho] ||_max, passing at 1e-10.
CheckReport multiplicativity_check(const DensityOperator& rho, double T1, double T2);

}  // namespace fockloss
