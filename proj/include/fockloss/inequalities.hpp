#pragma once
// Numerical verifiers for the equalities and inequalities implied by the
// convexity of purity under loss. Each returns a CheckReport whose margin is
// nonnegative when the relation holds.

#include <functional>
#include <vector>

#include "fockloss/check_report.hpp"
#include "fockloss/fock.hpp"
#include "fockloss/phase_space.hpp"

namespace fockloss {

inline constexpr double kExactTolerance = 1e-10;

/// |Tr(rho a)|^2 <= Tr(rho a^dag a).
CheckReport cauchy_schwarz_ladder(const DensityOperator& rho);

/// Tr[N rho_T^2] <= Tr[a rho_T a^dag rho_T] for T <= 1/2.
CheckReport corollary_loss_ladder(const DensityOperator& rho1, double T);

/// Tr[N rho_T^2]/T <= Tr[N rho_{1-T}^2]/(1-T), pure input, 0 < T <= 1/2.
CheckReport corollary_pure_ratio(const PureState& psi, double T);

/// Tr[a rho_T a^dag rho_T] = Tr[N rho_{1-T}^2] T/(1-T), pure input, T in (0,1).
CheckReport transpose_trick_identity(const PureState& psi, double T);

/// 4 Re<a^dag a^2><a^dag> - |<a^2>|^2 <= 2<N>^2 - <N> + <N^2>.
CheckReport pure_second_order_inequality(const PureState& psi);

/// The three closed forms of d^2 P/dT^2 in terms of rho_T (and rho_{1-T}).
/// Forms two and three hold only for pure inputs; `pure` is false otherwise
/// and they are left as NaN.
struct SecondDerivativeForms {
  double form1 = 0.0;
  double form2 = 0.0;
  double form3 = 0.0;
  double polynomial = 0.0;
  bool pure = false;
};
SecondDerivativeForms second_derivative_forms(const DensityOperator& rho1, double T);

/// Agreement of all applicable forms with the polynomial second derivative
/// (1e-9, relative to max(1, |value|)) and, for pure inputs or T <= 1/2,
/// nonnegativity. The margin is the smaller of the two.
CheckReport appendix_c_second_derivative(const DensityOperator& rho1, double T);

/// A regular P-function: a finite coherent mixture (weighted point masses)
/// or a thermal Gaussian density.
struct RegularP {
  std::vector<double> weights;
  std::vector<Complex> points;
  double thermal_nbar = 0.0;

  static RegularP coherent_mixture(std::vector<double> w, std::vector<Complex> a);
  static RegularP thermal(double nbar);
  bool is_thermal() const { return thermal_nbar > 0.0; }
  /// Density at alpha (thermal only).
  double density(Complex alpha) const;
};

/// d^k P/dT^k = (-1)^k int int P(a) P(b) |a-b|^{2k} e^{-T|a-b|^2}: operator side
/// from the polynomial, direct side from the P-function; tolerance 1e-4.
CheckReport quasi_derivative_identity(const DensityOperator& rho1, const RegularP& p, double T,
                                      int k);

/// Sign claims for (-1)^k d^k P/dT^k on the operator side. Pure input: odd k
/// checks value(T) + value(1-T) = 0 and the sign on the appropriate side of
/// 1/2; even k checks nonnegativity at any real T. Mixed input: nonnegativity
/// for T <= 1/2.
CheckReport corollary6_sign_check(const DensityOperator& rho1, double T, int k);

/// Weight w(d) = (A + B |d|^2) e^{-kappa |d|^2} applied to a double integral
/// over lattice samples of f and g: h^4 sum_ij f_i g_j w(alpha_i - alpha_j).
double lattice_pair_integral(const QuasiProbGrid& f, const QuasiProbGrid& g, double A, double B,
                             double kappa);

/// Husimi-pair inequality for T < 1/2, |T - 1/2| >= 0.02:
/// (1/(1-2T)) int int Q_rho Q_sigma (2/(1-2T) - |d|^2/(1-2T)^2) e^{-T|d|^2/(1-2T)} <= 0.
/// Inputs are arbitrary sampled functions. Tolerance 1e-6.
CheckReport husimi_pair_check(const QuasiProbGrid& q_rho, const QuasiProbGrid& q_sigma, double T);
CheckReport husimi_pair_check(const std::function<double(Complex)>& q_rho,
                              const std::function<double(Complex)>& q_sigma, double T,
                              const GridSpec& grid);

/// State version: samples both Husimi functions and also requires agreement
/// with d Tr[rho_T sigma_T]/dT from the overlap polynomial within 1e-4.
CheckReport husimi_pair_check(const DensityOperator& rho, const DensityOperator& sigma, double T,
                              const GridSpec& grid);

/// Same integral as the Husimi-pair check, without the sign assertion.
double husimi_pair_integral(const QuasiProbGrid& q_rho, const QuasiProbGrid& q_sigma, double T);

/// The general-order inequality: with r~ = r + r' - 2 and D = 2 + r~ T,
/// int int P(a, r) P(a', r') (4(2|d|^2 + r~) + 2 T r~^2)/D^3 e^{-2T|d|^2/D} >= 0.
/// Requires T <= 1/2 and D > 0. Tolerance 1e-5.
CheckReport general_r_check(const QuasiProbGrid& p_rho_r, const QuasiProbGrid& p_sigma_rp,
                            double r, double r_prime, double T);
CheckReport general_r_check(const DensityOperator& rho, const DensityOperator& sigma, double r,
                            double r_prime, double T, const GridSpec& grid);

/// (2/D) int int P(a, r) P(a', r') e^{-2T|d|^2/D}, which equals Tr[rho_T sigma_T].
double overlap_r_rprime(const QuasiProbGrid& p_rho_r, const QuasiProbGrid& p_sigma_rp, double r,
                        double r_prime, double T);

/// (T^2 d/dT)^k (T P(T)) at one T, evaluated through the coefficient
/// polynomials of the iterated operator.
double bernstein_value(const DensityOperator& rho1, double T, int k);

/// Minimum of (T^2 d/dT)^k (T P) over T in {0.01, ..., 1} for k = 1..k_max.
CheckReport bernstein_check(const DensityOperator& rho1, int k_max);

/// Tr[N rho_T^2] nondecreasing and Tr[a rho_T a^dag rho_T](1-T)/T
/// nonincreasing on the grid. The margin is the worst successive difference
/// with the appropriate sign. The second quantity is asserted only for pure
/// inputs; for mixed inputs its worst step is reported in params.
CheckReport number_purity_monotonicity(const DensityOperator& rho1, const std::vector<double>& T_grid);

/// Operator-side (Lindbladian), polynomial, and central finite-difference
/// (h = 1e-4) first derivatives of purity agree within 1e-6. The finite
/// difference is additionally allowed its exact truncation bound h^2 |P'''| / 6.
CheckReport derivative_route_check(const DensityOperator& rho1, double T);

}  // namespace fockloss
