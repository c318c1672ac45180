#pragma once
// Single- and two-mode states and operators on truncated Fock spaces.
//
// A single mode with cutoff c holds photon numbers 0..c-1. Two-mode operators
// act on |n1> (x) |n2> with row index n1 * c2 + n2.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace fockloss {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTruncationWarning = 1e-6;

class DensityOperator;

/// Normalized amplitude vector on a truncated Fock basis.
class PureState {
 public:
  /// Normalizes `amplitudes`. `tail_weight` is the probability the untruncated
  /// state places on photon numbers >= cutoff (0 for states that fit exactly).
  explicit PureState(CVector amplitudes, double tail_weight = 0.0);

  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_[n]; }
  int cutoff() const { return static_cast<int>(amplitudes_.size()); }
  double tail_weight() const { return tail_weight_; }
  bool truncation_warning() const { return tail_weight_ > kTruncationWarning; }

  DensityOperator density() const;
  PureState padded(int cutoff) const;

 private:
  CVector amplitudes_;
  double tail_weight_;
};

/// Hermitian operator on a truncated Fock basis. Physical operators are
/// validated on construction (Hermitian, unit trace, positive semidefinite);
/// nonphysical ones skip the positivity check and carry a flag that survives
/// channel application.
class DensityOperator {
 public:
  enum class Kind { physical, nonpositive };

  explicit DensityOperator(CMatrix matrix, Kind kind = Kind::physical);

  /// Wraps the result of a trace- and positivity-preserving operation without
  /// re-validating. The matrix is symmetrized to remove rounding asymmetry.
  static DensityOperator trusted(CMatrix matrix, Kind kind = Kind::physical);

  const CMatrix& matrix() const { return matrix_; }
  int cutoff() const { return static_cast<int>(matrix_.rows()); }
  Kind kind() const { return kind_; }
  bool is_physical() const { return kind_ == Kind::physical; }

  /// Embeds into a larger cutoff (zero padding). Smaller cutoffs are rejected.
  DensityOperator padded(int cutoff) const;

  /// Tr[rho N].
  double mean_photon_number() const;

  /// Largest photon number with a diagonal population above `threshold`.
  int support(double threshold = 1e-14) const;

 private:
  struct TrustedTag {};
  DensityOperator(CMatrix matrix, Kind kind, TrustedTag);

  CMatrix matrix_;
  Kind kind_;
};

/// Operator on two truncated modes with cutoffs (c1, c2).
struct TwoModeOperator {
  CMatrix matrix;
  int cutoff1 = 1;
  int cutoff2 = 1;

  TwoModeOperator() = default;
  TwoModeOperator(CMatrix m, int c1, int c2);

  int index(int n1, int n2) const { return n1 * cutoff2 + n2; }
};

/// Ladder, number and quadrature matrices at a given cutoff. [a, a^dag] equals
/// the identity except in the last diagonal entry, where truncation gives 1-c.
struct ModeOperators {
  int cutoff;
  CMatrix a;
  CMatrix adag;
  CMatrix n;
  CMatrix x;  // (a^dag + a)/sqrt(2)
  CMatrix p;  // i (a^dag - a)/sqrt(2)
};

ModeOperators mode_operators(int cutoff);

/// Real lowering-operator matrix, <n-1|a|n> = sqrt(n).
RMatrix annihilation(int cutoff);

// ---------------------------------------------------------------------------
// State constructors
// ---------------------------------------------------------------------------

/// |n>. Throws DomainError when n >= cutoff.
PureState make_fock(int n, int cutoff);

/// Truncated coherent state. The tail weight beyond the cutoff is reported
/// and raises the truncation warning above 1e-6.
PureState make_coherent(Complex alpha, int cutoff);

/// Squeezed vacuum S(r)|0>, amplitudes on even photon numbers
/// psi_{2m} = (-tanh r)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh r).
PureState make_squeezed_vacuum(double r, int cutoff);

/// Thermal state with mean photon number nbar, truncated and renormalized.
/// `tail_weight` receives the truncated population when non-null.
DensityOperator make_thermal(double nbar, int cutoff, double* tail_weight = nullptr);

/// Incoherent mixture of coherent states sum_i w_i |beta_i><beta_i|.
DensityOperator make_coherent_mixture(const std::vector<double>& weights,
                                      const std::vector<Complex>& amplitudes, int cutoff);

/// Haar-like random pure state (normalized complex Gaussian vector).
PureState random_pure(std::uint64_t seed, int cutoff);

/// Convex mixture of `rank` random pure states with random weights.
DensityOperator random_mixed(std::uint64_t seed, int cutoff, int rank);

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// <m|D(alpha)|n> for m, n < cutoff from the associated-Laguerre closed form.
/// These are matrix elements of the untruncated operator, so the matrix is
/// unitary only on photon numbers well below the cutoff.
CMatrix displacement_matrix(Complex alpha, int cutoff);

/// e^{i theta N} rho e^{-i theta N}.
DensityOperator rotate_phase(const DensityOperator& rho, double theta);

/// Mixing angle theta = arccos(sqrt(T)) of B(T) = exp(theta (a1 a2^dag - a1^dag a2)).
double transmission_angle(double T);

/// Real rotation exp(theta G) restricted to the block of total photon number
/// `total`, in the basis |k, total-k>, k = 0..total.
RMatrix beam_splitter_block(double theta, int total);

/// Dense B(theta) on the two-mode space with cutoffs (c1, c2). Assembled
/// blockwise, so entries between different total photon numbers are exact
/// zeros. Blocks cut by the truncation are exponentiated as truncated.
RMatrix beam_splitter_unitary(double theta, int c1, int c2);

/// B(T) s B(T)^dag, with B a1 B^dag = sqrt(T) a1 + sqrt(1-T) a2.
TwoModeOperator beam_splitter_apply(const TwoModeOperator& s, double T);

/// B s B^dag for an explicit mixing angle (negative angles invert).
TwoModeOperator beam_splitter_apply_angle(const TwoModeOperator& s, double theta);

TwoModeOperator tensor(const DensityOperator& a, const DensityOperator& b);
TwoModeOperator tensor(const CMatrix& a, const CMatrix& b);

enum class Mode { first = 1, second = 2 };

/// Reduced operator on mode `keep`.
CMatrix partial_trace_matrix(const TwoModeOperator& s, Mode keep);
DensityOperator partial_trace(const TwoModeOperator& s, Mode keep,
                              DensityOperator::Kind kind = DensityOperator::Kind::physical);

/// Max-abs elementwise distance.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace fockloss
