#pragma once
// Quadrature coherence scale C^2 by several independent routes.

#include <string_view>

#include "fockloss/fock.hpp"

namespace fockloss {

enum class QcsRoute { commutator, purity_rate, two_copy, lindblad };

std::string_view route_name(QcsRoute route);

struct QcsResult {
  double c_squared = 1.0;
  QcsRoute route = QcsRoute::commutator;
  double purity_used = 1.0;
  /// Set when T = 0: the lossy state is vacuum and C^2 = 1 by convention.
  bool degenerate = false;
};

/// (1/2P)(||[rho, X]||_F^2 + ||[rho, P]||_F^2) with the cutoff padded by `pad`
/// so the truncated commutators are exact. Throws AccuracyError when the
/// purity is below 1e-12 or when doubling the pad moves C^2 by more than 1e-9.
QcsResult qcs_commutator(const DensityOperator& rho, int pad = 2);

/// (T/P) dP/dT + 1 from the purity polynomial of rho1, for T in [0, 1].
QcsResult qcs_purity_rate(const DensityOperator& rho1, double T);

/// Tr[rho (x) rho N] / Tr[rho (x) rho S] with S the swap and
/// N = ((X1-X2)^2 + (P1-P2)^2) S / 2.
QcsResult qcs_two_copy(const DensityOperator& rho);

/// (2/P) Tr[N rho_T^2 - a rho_T a^dag rho_T] + 1.
QcsResult qcs_lindblad(const DensityOperator& rho1, double T);

/// Variant valid for pure rho1 and T in (0, 1):
/// (2T/P)(Tr[N rho_T^2]/T - Tr[N rho_{1-T}^2]/(1-T)) + 1.
double qcs_lindblad_pure_form(const DensityOperator& rho1, double T);

struct KernelGrid {
  double x_max = 6.0;
  int n_points = 401;
};

struct KernelQcs {
  double c_squared = 0.0;
  /// Raised when Hermite functions up to the cutoff are not normalized on the
  /// grid to 1e-8, i.e. the grid is too narrow or too coarse.
  bool accuracy_warning = false;
};

/// Position and momentum kernel form:
/// (1/2P)(int (x-x')^2 |rho(x,x')|^2 + int (p-p')^2 |rho(p,p')|^2),
/// trapezoid rule on a uniform grid.
KernelQcs qcs_kernel_form(const DensityOperator& rho, const KernelGrid& grid = {});

}  // namespace fockloss
