#pragma once
// s-ordered quasiprobabilities P(alpha, s) and characteristic functions
// chi(alpha, s) = Tr[rho D(alpha)] e^{s |alpha|^2 / 2}.
//
// Conventions: P(alpha, s) = (1/pi^2) int d^2 beta e^{beta* alpha - beta alpha*} chi(beta, s),
// normalized to int P d^2 alpha = 1. s = 1, 0, -1 give the Glauber-Sudarshan,
// Wigner and Husimi functions.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fockloss/check_report.hpp"
#include "fockloss/fock.hpp"
#include "fockloss/quadrature.hpp"

namespace fockloss {

struct QuadratureSpec {
  int n_radial = 80;
  int n_angular = 128;
};

Complex char_fn(const DensityOperator& rho, Complex alpha, double s);

/// Matrix of pi * Delta(alpha, s) in the Fock basis, so that
/// P(alpha, s) = Tr[rho K] / pi. Closed form in generalized Laguerre
/// polynomials; s >= 1 throws DomainError.
CMatrix kernel_matrix(Complex alpha, double s, int cutoff);

/// P(alpha, s) for s < 1.
double quasi_prob(const DensityOperator& rho, Complex alpha, double s);

/// Wigner function from displaced parity, (2/pi) Tr[rho D Pi D^dag]. The
/// displaced state is evaluated at a padded cutoff.
double wigner_parity(const DensityOperator& rho, Complex alpha, int pad = 40);

/// P(alpha, s) by direct quadrature of the Fourier integral of chi. Slow;
/// used to validate the closed-form kernel.
double quasi_prob_fourier(const DensityOperator& rho, Complex alpha, double s,
                          const QuadratureSpec& q = {});

/// P_{rho_T}(alpha, s) = (1/T) P_{rho_1}(alpha/sqrt T, (s+T-1)/T), tolerance 1e-8.
CheckReport loss_identity_quasi(const DensityOperator& rho1, double T, Complex alpha, double s);

/// chi_{rho_T}(alpha, s) = chi_{rho_1}(sqrt T alpha, (s+T-1)/T), tolerance 1e-9.
CheckReport loss_identity_chi(const DensityOperator& rho1, double T, Complex alpha, double s);

/// Square n x n lattice centred at `center`, spacing 2 half_width/(n-1).
struct GridSpec {
  Complex center{0.0, 0.0};
  double half_width = 6.0;
  int n = 121;

  double spacing() const { return 2.0 * half_width / (n - 1); }
  /// Point (i, j): i indexes Re(alpha) (outer), j indexes Im(alpha).
  Complex point(int i, int j) const;
};

/// Default half-width 6 + sqrt(max photon number).
GridSpec default_grid(const DensityOperator& rho, int n = 121);

/// Real samples of a quasiprobability on a GridSpec, row-major with Re(alpha)
/// as the outer index.
struct QuasiProbGrid {
  double s = 0.0;
  GridSpec spec;
  std::vector<double> values;
  double normalization = 0.0;  // sum of values times the cell area

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.n + j]; }
  double min_value() const;
};

QuasiProbGrid quasi_prob_grid(const DensityOperator& rho, double s, const GridSpec& spec);

/// Samples an arbitrary function (e.g. a regular P-function) as order-s data.
QuasiProbGrid sample_grid(const std::function<double(Complex)>& f, double s,
                          const GridSpec& spec);

/// Shifts the order by delta_s < 0 by discrete convolution with
/// (2/(pi |delta_s|)) e^{2 |alpha - beta|^2 / delta_s}. The Gaussian is
/// separable, so it runs as two passes of 1D lattice correlations.
QuasiProbGrid convolve_quasi(const QuasiProbGrid& grid, double delta_s);

/// pi int P_rho(alpha, s) P_sigma(alpha, -s) d^2 alpha, for |s| < 1.
double overlap_from_quasi(const DensityOperator& rho, const DensityOperator& sigma, double s,
                          const QuadratureSpec& q = {});

/// int (d^2 alpha / pi) e^{-s |alpha|^2} |chi(alpha, s)|^2. Throws
/// AccuracyError when the outermost radial nodes carry more than 1e-6 of the
/// integrand mass.
double purity_from_chi(const DensityOperator& rho, double s, const QuadratureSpec& q = {});

/// Purity of rho_T from chi of rho_1:
/// int (d^2 alpha / pi) (e^{-|alpha|^2/T}/T) |e^{(1-s)|alpha|^2/2} chi_{rho_1}(alpha, s)|^2.
double purity_lossy_from_chi(const DensityOperator& rho1, double T, double s,
                             const QuadratureSpec& q = {});

/// (1/2 pi) int d theta |chi(sqrt(tau) e^{i theta}, 1)|^2.
double phase_averaged_chi_sq(const DensityOperator& rho, double tau, int n_angular = 128);

/// (1/T) times the Laplace transform of the phase-averaged |chi|^2 at 1/T.
double laplace_purity(const DensityOperator& rho1, double T, const QuadratureSpec& q = {});

/// CSV export: one '#' metadata line (s, T, state), a header
/// `re_alpha,im_alpha,value`, then rows in grid order.
void write_grid_csv(std::ostream& os, const QuasiProbGrid& grid, double T,
                    const std::string& state);

}  // namespace fockloss
