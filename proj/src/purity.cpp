#include "fockloss/purity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <sstream>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "fockloss/error.hpp"
#include "fockloss/kernels/kernels.hpp"
#include "fockloss/loss.hpp"

namespace fockloss {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Falling factorial m (m-1) ... (m-k+1).
double falling(int m, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (m - i);
  return r;
}

double trace_product(const CMatrix& a, const CMatrix& b) {
  // Tr[A B] = sum conj(A^dag)_{ij} B_{ij}; for Hermitian A this is one cdotc.
  const CMatrix ad = a.adjoint();
  return kernels::cdotc({ad.data(), static_cast<std::size_t>(ad.size())},
                        {b.data(), static_cast<std::size_t>(b.size())})
      .real();
}

void require_same_cutoff(const DensityOperator& a, const DensityOperator& b) {
  if (a.cutoff() != b.cutoff()) throw DimensionError("operands have different cutoffs");
}

}  // namespace

// ---------------------------------------------------------------------------
// PurityPolynomial
// ---------------------------------------------------------------------------

double PurityPolynomial::at_lambda(double lambda) const {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

double PurityPolynomial::lambda_derivative(double lambda, int k) const {
  if (k < 0) throw DomainError("derivative order must be nonnegative");
  double acc = 0.0;
  for (int m = static_cast<int>(p.size()) - 1; m >= k; --m) {
    acc = acc * lambda + p[m] * falling(m, k);
  }
  return acc;
}

double PurityPolynomial::derivative(double T, int k) const {
  return lambda_derivative(1.0 - 2.0 * T, k) * std::pow(-2.0, k);
}

double PurityPolynomial::sum() const {
  double s = 0.0;
  for (double v : p) s += v;
  return s;
}

// ---------------------------------------------------------------------------
// Purity and entropies
// ---------------------------------------------------------------------------

double purity(const CMatrix& m) {
  return kernels::cdotc({m.data(), static_cast<std::size_t>(m.size())},
                        {m.data(), static_cast<std::size_t>(m.size())})
      .real();
}

double purity(const DensityOperator& rho) { return purity(rho.matrix()); }

RVector state_spectrum(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  RVector ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < -1e-8) throw NonStateError("negative eigenvalue in entropy evaluation");
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  return ev;
}

double entropy_from_spectrum(const RVector& eigenvalues) {
  double h = 0.0;
  for (int i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues[i];
    if (v > 1e-14) h -= v * std::log(v);
  }
  return h;
}

double von_neumann(const DensityOperator& rho) { return entropy_from_spectrum(state_spectrum(rho)); }

double renyi_entropy(const DensityOperator& rho, double order) {
  if (!(order > 0.0)) throw DomainError("Renyi order must be positive");
  if (order == 1.0) return von_neumann(rho);
  const RVector ev = state_spectrum(rho);
  // Eigenvalues at rounding level are zeros; for order < 1 their powers are not negligible.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > floor) s += std::pow(ev[i], order);
  }
  return std::log(s) / (1.0 - order);
}

// ---------------------------------------------------------------------------
// Dark-port expansion
// ---------------------------------------------------------------------------

std::vector<double> dark_port_distribution(const TwoModeOperator& phi) {
  const int c1 = phi.cutoff1;
  const int c2 = phi.cutoff2;
  const int max_total = c1 + c2 - 2;
  std::vector<double> pops(max_total + 1, 0.0);
  // The inverse balanced splitter maps a_- onto mode 2.
  const double theta = -std::numbers::pi / 4.0;
  for (int total = 0; total <= max_total; ++total) {
    const int lo = std::max(0, total - c2 + 1);
    const int hi = std::min(total, c1 - 1);
    CMatrix blk = CMatrix::Zero(total + 1, total + 1);
    for (int k = lo; k <= hi; ++k) {
      for (int kp = lo; kp <= hi; ++kp) {
        blk(k, kp) = phi.matrix(phi.index(k, total - k), phi.index(kp, total - kp));
      }
    }
    const CMatrix u = beam_splitter_block(theta, total).cast<Complex>();
    const CMatrix out = u * blk * u.transpose();
    for (int k = 0; k <= total; ++k) pops[total - k] += out(k, k).real();
  }
  return pops;
}

PurityPolynomial overlap_polynomial(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_cutoff(rho, sigma);
  return PurityPolynomial{dark_port_distribution(tensor(rho, sigma))};
}

PurityPolynomial purity_polynomial(const DensityOperator& rho) {
  return overlap_polynomial(rho, rho);
}

double min_purity_pure(const PureState& psi) {
  const int c = psi.cutoff();
  double total = 0.0;
  for (int n = 0; n <= 2 * (c - 1); ++n) {
    Complex amp{0.0, 0.0};
    for (int k = std::max(0, n - c + 1); k <= std::min(n, c - 1); ++k) {
      amp += psi[k] * psi[n - k] * std::sqrt(binomial(n, k));
    }
    total += std::norm(amp) / std::ldexp(1.0, n);
  }
  return total;
}

double hs_overlap(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_cutoff(rho, sigma);
  return trace_product(sigma.matrix().adjoint(), rho.matrix());
}

double lossy_overlap(const DensityOperator& rho, const DensityOperator& sigma, double T) {
  require_same_cutoff(rho, sigma);
  return hs_overlap(apply_loss(rho, T), apply_loss(sigma, T));
}

double mutual_information_bs(const DensityOperator& rho, double T) {
  const int c = rho.cutoff();
  const TwoModeOperator omega = beam_splitter_apply(tensor(rho, make_fock(0, c).density()), T);
  const double h_a = von_neumann(partial_trace(omega, Mode::first));
  const double h_b = von_neumann(partial_trace(omega, Mode::second));
  return h_a + h_b - von_neumann(rho);
}

double fock_purity_closed_form(int n, double T) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = binomial(n, k) * std::pow(T, k) * std::pow(1.0 - T, n - k);
    total += w * w;
  }
  return total;
}

double fock_purity_hypergeometric(int n, double T) {
  if (n < 0) throw DomainError("photon number must be nonnegative");
  if (T == 1.0) throw DomainError("hypergeometric form is singular at T = 1");
  const double z = T * T / ((T - 1.0) * (T - 1.0));
  // 2F1(-n, -n; 1; z) terminates: sum_k ((-n)_k)^2 / (k!)^2 z^k = sum_k C(n,k)^2 z^k.
  double f = 0.0;
  double term = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      const double r = static_cast<double>(n - k + 1) / k;
      term *= r * r * z;
    }
    f += term;
  }
  return std::pow(1.0 - T, 2 * n) * f;
}

double appendix_a_purity(const DensityOperator& rho, double T) {
  const int c = rho.cutoff();
  const CMatrix a = annihilation(c).cast<Complex>();
  CMatrix e = CMatrix::Zero(c, c);
  for (int n = 0; n < c; ++n) e(n, n) = std::pow(1.0 - T, n);
  // powers[l] = a^l
  std::vector<CMatrix> powers{CMatrix::Identity(c, c)};
  for (int l = 1; l < c; ++l) powers.push_back(powers.back() * a);
  double total = 0.0;
  double fl = 1.0;
  for (int l = 0; l < c; ++l) {
    if (l > 0) fl *= l;
    const CMatrix left = powers[l].adjoint() * e;
    double flp = 1.0;
    for (int lp = 0; lp < c; ++lp) {
      if (lp > 0) flp *= lp;
      const Complex tr = (left * powers[lp] * rho.matrix()).trace();
      total += std::pow(T, l + lp) / (fl * flp) * std::norm(tr);
    }
  }
  return total;
}

double purity_derivative(const DensityOperator& rho, double T, int k) {
  return purity_polynomial(rho).derivative(T, k);
}

double number_purity(const CMatrix& rho) {
  const int c = static_cast<int>(rho.rows());
  CMatrix nr = rho;
  for (int n = 0; n < c; ++n) nr.row(n) *= static_cast<double>(n);
  return trace_product(nr, rho);
}

double ladder_purity(const CMatrix& rho) {
  const int c = static_cast<int>(rho.rows());
  const CMatrix a = annihilation(c).cast<Complex>();
  return (a * rho * a.adjoint() * rho).trace().real();
}

double purity_derivative_lindblad(const DensityOperator& rho, double T) {
  if (T == 0.0) throw DomainError("Lindbladian derivative form is singular at T = 0");
  const CMatrix r = apply_loss(rho, T).matrix();
  return 2.0 / T * (number_purity(r) - ladder_purity(r));
}

namespace {

CheckReport concavity_report(std::string name, double T, double h,
                             const std::function<double(double)>& f, std::string anchor) {
  if (!(h > 0.0 && T - h >= 0.0 && T + h <= 1.0)) {
    throw DomainError("finite-difference window must lie inside [0, 1]");
  }
  const double d2 = (f(T + h) - 2.0 * f(T) + f(T - h)) / (h * h);
  std::ostringstream p;
  p << "T=" << T << ";h=" << h;
  return CheckReport::inequality(std::move(name), d2, 0.0, 1e-7, std::move(anchor))
      .with_params(p.str());
}

}  // namespace

CheckReport entropy_concavity_check(const DensityOperator& rho1, double T, double h) {
  return concavity_report(
      "entropy_concavity", T, h, [&](double t) { return von_neumann(apply_loss(rho1, t)); },
      "second difference of H1(rho_T) <= 0");
}

CheckReport mutual_information_concavity_check(const DensityOperator& rho1, double T, double h) {
  return concavity_report(
      "mutual_information_concavity", T, h,
      [&](double t) { return mutual_information_bs(rho1, t); },
      "second difference of beam-splitter mutual information <= 0");
}

}  // namespace fockloss
