#include "fockloss/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "fockloss/error.hpp"

namespace fockloss {

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1, got " + std::to_string(cutoff));
}

Complex ipow(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

// ---------------------------------------------------------------------------
// PureState
// ---------------------------------------------------------------------------

PureState::PureState(CVector amplitudes, double tail_weight)
    : amplitudes_(std::move(amplitudes)), tail_weight_(tail_weight) {
  require_cutoff(static_cast<int>(amplitudes_.size()));
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NonStateError("pure state has zero norm");
  amplitudes_ /= norm;
}

DensityOperator PureState::density() const {
  return DensityOperator::trusted(amplitudes_ * amplitudes_.adjoint());
}

PureState PureState::padded(int cutoff) const {
  if (cutoff < this->cutoff()) throw DimensionError("cannot pad a state to a smaller cutoff");
  CVector v = CVector::Zero(cutoff);
  v.head(this->cutoff()) = amplitudes_;
  return PureState(std::move(v), tail_weight_);
}

// ---------------------------------------------------------------------------
// DensityOperator
// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(CMatrix matrix, Kind kind) : kind_(kind) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("density operator must be square");
  require_cutoff(static_cast<int>(matrix.rows()));
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    throw NonStateError("operator is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double tr = matrix.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    throw NonStateError("operator trace " + std::to_string(tr) + " differs from 1");
  }
  matrix_ = hermitian_part(matrix);
  if (kind_ == Kind::physical) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    const double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -kNormTolerance) {
      throw NonStateError("operator has negative eigenvalue " + std::to_string(min_ev));
    }
  }
}

DensityOperator::DensityOperator(CMatrix matrix, Kind kind, TrustedTag)
    : matrix_(hermitian_part(matrix)), kind_(kind) {}

DensityOperator DensityOperator::trusted(CMatrix matrix, Kind kind) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("density operator must be square");
  return DensityOperator(std::move(matrix), kind, TrustedTag{});
}

DensityOperator DensityOperator::padded(int cutoff) const {
  if (cutoff < this->cutoff()) throw DimensionError("cannot pad an operator to a smaller cutoff");
  CMatrix m = CMatrix::Zero(cutoff, cutoff);
  m.topLeftCorner(this->cutoff(), this->cutoff()) = matrix_;
  return DensityOperator(std::move(m), kind_, TrustedTag{});
}

double DensityOperator::mean_photon_number() const {
  double acc = 0.0;
  for (int n = 0; n < cutoff(); ++n) acc += n * matrix_(n, n).real();
  return acc;
}

int DensityOperator::support(double threshold) const {
  for (int n = cutoff() - 1; n > 0; --n) {
    if (std::abs(matrix_(n, n)) > threshold) return n;
  }
  return 0;
}

TwoModeOperator::TwoModeOperator(CMatrix m, int c1, int c2)
    : matrix(std::move(m)), cutoff1(c1), cutoff2(c2) {
  require_cutoff(c1);
  require_cutoff(c2);
  if (matrix.rows() != c1 * c2 || matrix.cols() != c1 * c2) {
    throw DimensionError("two-mode matrix does not match cutoffs " + std::to_string(c1) + "x" +
                         std::to_string(c2));
  }
}

// ---------------------------------------------------------------------------
// Mode operators
// ---------------------------------------------------------------------------

RMatrix annihilation(int cutoff) {
  require_cutoff(cutoff);
  RMatrix a = RMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ModeOperators mode_operators(int cutoff) {
  ModeOperators ops;
  ops.cutoff = cutoff;
  ops.a = annihilation(cutoff).cast<Complex>();
  ops.adag = ops.a.adjoint();
  ops.n = CMatrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) ops.n(k, k) = static_cast<double>(k);
  const double s = 1.0 / std::sqrt(2.0);
  ops.x = s * (ops.adag + ops.a);
  ops.p = Complex(0.0, s) * (ops.adag - ops.a);
  return ops;
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

PureState make_fock(int n, int cutoff) {
  require_cutoff(cutoff);
  if (n < 0 || n >= cutoff) {
    throw DomainError("Fock state |" + std::to_string(n) + "> does not fit cutoff " +
                      std::to_string(cutoff));
  }
  CVector v = CVector::Zero(cutoff);
  v[n] = 1.0;
  return PureState(std::move(v));
}

PureState make_coherent(Complex alpha, int cutoff) {
  require_cutoff(cutoff);
  CVector v(cutoff);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  double kept = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    v[n] = term;
    kept += std::norm(term);
  }
  return PureState(std::move(v), std::max(0.0, 1.0 - kept));
}

PureState make_squeezed_vacuum(double r, int cutoff) {
  require_cutoff(cutoff);
  CVector v = CVector::Zero(cutoff);
  const double t = -std::tanh(r);
  // psi_{2m} / psi_{2m-2} = t * sqrt((2m)(2m-1)) / (2m)
  double amp = 1.0 / std::sqrt(std::cosh(r));
  double kept = 0.0;
  for (int m = 0; 2 * m < cutoff; ++m) {
    if (m > 0) {
      const double twom = 2.0 * m;
      amp *= t * std::sqrt(twom * (twom - 1.0)) / twom;
    }
    v[2 * m] = amp;
    kept += amp * amp;
  }
  return PureState(std::move(v), std::max(0.0, 1.0 - kept));
}

DensityOperator make_thermal(double nbar, int cutoff, double* tail_weight) {
  require_cutoff(cutoff);
  if (nbar < 0.0) throw DomainError("thermal mean photon number must be nonnegative");
  CMatrix m = CMatrix::Zero(cutoff, cutoff);
  const double ratio = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  double kept = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    m(n, n) = p;
    kept += p;
    p *= ratio;
  }
  if (tail_weight != nullptr) *tail_weight = std::max(0.0, 1.0 - kept);
  m /= kept;
  return DensityOperator::trusted(std::move(m));
}

DensityOperator make_coherent_mixture(const std::vector<double>& weights,
                                      const std::vector<Complex>& amplitudes, int cutoff) {
  if (weights.size() != amplitudes.size() || weights.empty()) {
    throw DimensionError("coherent mixture needs one weight per amplitude");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError("mixture weights must be nonnegative");
    total += w;
  }
  CMatrix m = CMatrix::Zero(cutoff, cutoff);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const PureState psi = make_coherent(amplitudes[i], cutoff);
    m += (weights[i] / total) * psi.amplitudes() * psi.amplitudes().adjoint();
  }
  return DensityOperator::trusted(std::move(m));
}

namespace {

CVector gaussian_vector(std::mt19937_64& rng, int cutoff) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(cutoff);
  for (int n = 0; n < cutoff; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[n] = Complex(re, im);
  }
  return v;
}

}  // namespace

PureState random_pure(std::uint64_t seed, int cutoff) {
  require_cutoff(cutoff);
  std::mt19937_64 rng(seed);
  return PureState(gaussian_vector(rng, cutoff));
}

DensityOperator random_mixed(std::uint64_t seed, int cutoff, int rank) {
  require_cutoff(cutoff);
  if (rank < 1 || rank > cutoff) {
    throw DomainError("rank must lie in [1, cutoff], got " + std::to_string(rank));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<CVector> vectors;
  std::vector<double> weights;
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    CVector v = gaussian_vector(rng, cutoff);
    v.normalize();
    vectors.push_back(std::move(v));
    weights.push_back(rank == 1 ? 1.0 : uniform(rng));
    total += weights.back();
  }
  CMatrix m = CMatrix::Zero(cutoff, cutoff);
  for (int k = 0; k < rank; ++k) m += (weights[k] / total) * vectors[k] * vectors[k].adjoint();
  return DensityOperator::trusted(std::move(m));
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

CMatrix displacement_matrix(Complex alpha, int cutoff) {
  require_cutoff(cutoff);
  const double x = std::norm(alpha);
  const double gauss = std::exp(-0.5 * x);
  CMatrix d(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) {
    // Column of generalized Laguerre polynomials L_n^{(k)}(x), n = 0..cutoff-1-k.
    const Complex ak = ipow(alpha, k);
    const Complex mak = ipow(-std::conj(alpha), k);
    double lm1 = 0.0;
    double l = 1.0;
    for (int n = 0; n + k < cutoff; ++n) {
      if (n == 1) {
        lm1 = 1.0;
        l = 1.0 + k - x;
      } else if (n > 1) {
        const double next = ((2.0 * (n - 1) + 1.0 + k - x) * l - (n - 1 + k) * lm1) / n;
        lm1 = l;
        l = next;
      }
      const int m = n + k;
      const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
      // <m|D|n> for m >= n; the upper triangle from D(alpha)^dag = D(-alpha).
      d(m, n) = ratio * ak * gauss * l;
      if (k > 0) d(n, m) = ratio * mak * gauss * l;
    }
  }
  return d;
}

DensityOperator rotate_phase(const DensityOperator& rho, double theta) {
  const int c = rho.cutoff();
  CMatrix m = rho.matrix();
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) m(i, j) *= std::polar(1.0, theta * (i - j));
  }
  return DensityOperator::trusted(std::move(m), rho.kind());
}

double transmission_angle(double T) {
  if (T < 0.0 || T > 1.0) throw DomainError("transmission must lie in [0, 1]");
  return std::acos(std::sqrt(T));
}

namespace {

RMatrix block_generator(int total) {
  RMatrix g = RMatrix::Zero(total + 1, total + 1);
  for (int k = 0; k <= total; ++k) {
    // G |k, N-k> = sqrt(k (N-k+1)) |k-1, N-k+1> - sqrt((k+1)(N-k)) |k+1, N-k-1>
    if (k > 0) g(k - 1, k) = std::sqrt(static_cast<double>(k) * (total - k + 1));
    if (k < total) g(k + 1, k) = -std::sqrt(static_cast<double>(k + 1) * (total - k));
  }
  return g;
}

}  // namespace

RMatrix beam_splitter_block(double theta, int total) {
  if (total < 0) throw DomainError("total photon number must be nonnegative");
  const RMatrix g = theta * block_generator(total);
  return g.exp();
}

RMatrix beam_splitter_unitary(double theta, int c1, int c2) {
  require_cutoff(c1);
  require_cutoff(c2);
  RMatrix u = RMatrix::Zero(c1 * c2, c1 * c2);
  for (int total = 0; total <= c1 + c2 - 2; ++total) {
    const int lo = std::max(0, total - c2 + 1);
    const int hi = std::min(total, c1 - 1);
    const int size = hi - lo + 1;
    RMatrix g = block_generator(total).block(lo, lo, size, size);
    const RMatrix blk = (theta * g).exp();
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        const int ki = lo + i;
        const int kj = lo + j;
        u(ki * c2 + (total - ki), kj * c2 + (total - kj)) = blk(i, j);
      }
    }
  }
  return u;
}

TwoModeOperator beam_splitter_apply_angle(const TwoModeOperator& s, double theta) {
  const RMatrix u = beam_splitter_unitary(theta, s.cutoff1, s.cutoff2);
  const CMatrix uc = u.cast<Complex>();
  return TwoModeOperator(uc * s.matrix * uc.transpose(), s.cutoff1, s.cutoff2);
}

TwoModeOperator beam_splitter_apply(const TwoModeOperator& s, double T) {
  return beam_splitter_apply_angle(s, transmission_angle(T));
}

TwoModeOperator tensor(const CMatrix& a, const CMatrix& b) {
  const int c1 = static_cast<int>(a.rows());
  const int c2 = static_cast<int>(b.rows());
  if (a.cols() != c1 || b.cols() != c2) throw DimensionError("tensor factors must be square");
  CMatrix m(c1 * c2, c1 * c2);
  for (int i = 0; i < c1; ++i) {
    for (int j = 0; j < c1; ++j) m.block(i * c2, j * c2, c2, c2) = a(i, j) * b;
  }
  return TwoModeOperator(std::move(m), c1, c2);
}

TwoModeOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return tensor(a.matrix(), b.matrix());
}

CMatrix partial_trace_matrix(const TwoModeOperator& s, Mode keep) {
  const int c1 = s.cutoff1;
  const int c2 = s.cutoff2;
  if (keep == Mode::first) {
    CMatrix r = CMatrix::Zero(c1, c1);
    for (int i = 0; i < c1; ++i)
      for (int j = 0; j < c1; ++j)
        for (int k = 0; k < c2; ++k) r(i, j) += s.matrix(i * c2 + k, j * c2 + k);
    return r;
  }
  CMatrix r = CMatrix::Zero(c2, c2);
  for (int i = 0; i < c2; ++i)
    for (int j = 0; j < c2; ++j)
      for (int k = 0; k < c1; ++k) r(i, j) += s.matrix(k * c2 + i, k * c2 + j);
  return r;
}

DensityOperator partial_trace(const TwoModeOperator& s, Mode keep, DensityOperator::Kind kind) {
  return DensityOperator::trusted(partial_trace_matrix(s, keep), kind);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace fockloss
