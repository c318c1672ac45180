#pragma once
// Purity, entropies, Hilbert-Schmidt overlaps and the dark-port expansion
// Tr[rho_T sigma_T] = sum_m p_m lambda^m, lambda = 1 - 2T.

#include <vector>

#include "fockloss/check_report.hpp"
#include "fockloss/fock.hpp"

namespace fockloss {

/// Coefficients p_m of an overlap (or purity) in powers of lambda = 1 - 2T.
/// p_m is the probability of m photons in the dark port a_- = (a1 - a2)/sqrt 2
/// of a balanced beam splitter fed with rho (x) sigma.
struct PurityPolynomial {
  std::vector<double> p;

  double at_lambda(double lambda) const;
  double value(double T) const { return at_lambda(1.0 - 2.0 * T); }
  /// k-th derivative in T (exact polynomial differentiation).
  double derivative(double T, int k) const;
  /// k-th derivative in lambda.
  double lambda_derivative(double lambda, int k) const;
  double sum() const;
};

double purity(const DensityOperator& rho);
double purity(const CMatrix& m);

/// Eigenvalues of a state, with values in [-1e-8, 0) clipped to zero.
/// Throws NonStateError for anything more negative.
RVector state_spectrum(const DensityOperator& rho);

/// Rényi entropy in nats. Order 1 gives the von Neumann entropy.
double renyi_entropy(const DensityOperator& rho, double order);
double von_neumann(const DensityOperator& rho);
double entropy_from_spectrum(const RVector& eigenvalues);

/// Photon-number distribution of mode a_- for an arbitrary two-mode operator.
/// Only the diagonal total-photon-number blocks contribute.
std::vector<double> dark_port_distribution(const TwoModeOperator& phi);

PurityPolynomial purity_polynomial(const DensityOperator& rho);
PurityPolynomial overlap_polynomial(const DensityOperator& rho, const DensityOperator& sigma);

/// Purity after 50% loss written directly in the amplitudes of |psi>.
double min_purity_pure(const PureState& psi);

double hs_overlap(const DensityOperator& rho, const DensityOperator& sigma);
/// Tr[sigma_T^dag rho_T].
double lossy_overlap(const DensityOperator& rho, const DensityOperator& sigma, double T);

/// Mutual information between the two outputs of B(T) fed with rho and vacuum.
double mutual_information_bs(const DensityOperator& rho, double T);

/// sum_k (C(n,k) T^k (1-T)^{n-k})^2, valid for every real T.
double fock_purity_closed_form(int n, double T);
/// (1-T)^{2n} 2F1(-n, -n; 1; T^2/(T-1)^2). Undefined at T = 1 (DomainError).
double fock_purity_hypergeometric(int n, double T);

/// sum_{l,l'} T^{l+l'}/(l! l'!) |Tr[a^dag^l (1-T)^N a^l' rho]|^2.
double appendix_a_purity(const DensityOperator& rho, double T);

/// d^k/dT^k Tr[rho_T^2] from the polynomial.
double purity_derivative(const DensityOperator& rho, double T, int k);

/// First derivative from the Lindbladian: (2/T) Tr[N rho_T^2 - a rho_T a^dag rho_T].
double purity_derivative_lindblad(const DensityOperator& rho, double T);

/// Tr[N rho^2] and Tr[a rho a^dag rho]: the two "number-operator purities".
double number_purity(const CMatrix& rho);
double ladder_purity(const CMatrix& rho);

/// Second central difference (H(T+h) - 2H(T) + H(T-h)) / h^2 <= 1e-7 for the
/// von Neumann entropy of rho_T. Needs [T-h, T+h] inside [0, 1].
CheckReport entropy_concavity_check(const DensityOperator& rho1, double T, double h = 1e-2);

/// Same finite-difference test for the beam-splitter mutual information.
CheckReport mutual_information_concavity_check(const DensityOperator& rho1, double T,
                                               double h = 1e-2);

}  // namespace fockloss
