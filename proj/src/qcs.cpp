#include "fockloss/qcs.hpp"

#include <cmath>
#include <numbers>

#include "fockloss/error.hpp"
#include "fockloss/loss.hpp"
#include "fockloss/purity.hpp"

namespace fockloss {

std::string_view route_name(QcsRoute route) {
  switch (route) {
    case QcsRoute::commutator: return "commutator";
    case QcsRoute::purity_rate: return "purity_rate";
    case QcsRoute::two_copy: return "two_copy";
    case QcsRoute::lindblad: return "lindblad";
  }
  return "unknown";
}

namespace {

constexpr double kMinPurity = 1e-12;

double commutator_value(const DensityOperator& rho, int pad, double* p_out) {
  const int c = rho.cutoff() + pad;
  const CMatrix r = rho.padded(c).matrix();
  const ModeOperators ops = mode_operators(c);
  const double p = purity(r);
  if (p < kMinPurity) throw AccuracyError("purity underflow in QCS");
  const CMatrix cx = r * ops.x - ops.x * r;
  const CMatrix cp = r * ops.p - ops.p * r;
  *p_out = p;
  return (cx.squaredNorm() + cp.squaredNorm()) / (2.0 * p);
}

void require_loss_range(double T) {
  if (!(T >= 0.0 && T <= 1.0)) throw DomainError("QCS under loss needs T in [0, 1]");
}

}  // namespace

QcsResult qcs_commutator(const DensityOperator& rho, int pad) {
  if (pad < 1) throw DomainError("commutator route needs a pad of at least 1");
  double p = 0.0;
  double p2 = 0.0;
  const double c2 = commutator_value(rho, pad, &p);
  const double c2_wide = commutator_value(rho, 2 * pad, &p2);
  if (std::abs(c2 - c2_wide) > 1e-9) throw AccuracyError("commutator QCS is not cutoff-stable");
  return QcsResult{c2, QcsRoute::commutator, p, false};
}

QcsResult qcs_purity_rate(const DensityOperator& rho1, double T) {
  require_loss_range(T);
  if (T == 0.0) return QcsResult{1.0, QcsRoute::purity_rate, 1.0, true};
  const PurityPolynomial poly = purity_polynomial(rho1);
  const double p = poly.value(T);
  if (p < kMinPurity) throw AccuracyError("purity underflow in QCS");
  return QcsResult{T / p * poly.derivative(T, 1) + 1.0, QcsRoute::purity_rate, p, false};
}

QcsResult qcs_two_copy(const DensityOperator& rho) {
  const int c = rho.cutoff() + 2;
  const CMatrix r = rho.padded(c).matrix();
  const ModeOperators ops = mode_operators(c);
  const CMatrix id = CMatrix::Identity(c, c);
  const int d = c * c;
  CMatrix swap = CMatrix::Zero(d, d);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < c; ++j) swap(j * c + i, i * c + j) = 1.0;
  }
  const CMatrix dx = tensor(ops.x, id).matrix - tensor(id, ops.x).matrix;
  const CMatrix dp = tensor(ops.p, id).matrix - tensor(id, ops.p).matrix;
  const CMatrix n_hat = 0.5 * (dx * dx + dp * dp) * swap;
  const CMatrix rr = tensor(r, r).matrix;
  const double num = (rr * n_hat).trace().real();
  const double den = (rr * swap).trace().real();
  if (den < kMinPurity) throw AccuracyError("purity underflow in QCS");
  return QcsResult{num / den, QcsRoute::two_copy, den, false};
}

QcsResult qcs_lindblad(const DensityOperator& rho1, double T) {
  require_loss_range(T);
  if (T == 0.0) return QcsResult{1.0, QcsRoute::lindblad, 1.0, true};
  const CMatrix r = T == 1.0 ? rho1.matrix() : apply_loss(rho1, T).matrix();
  const double p = purity(r);
  if (p < kMinPurity) throw AccuracyError("purity underflow in QCS");
  const double c2 = 2.0 / p * (number_purity(r) - ladder_purity(r)) + 1.0;
  return QcsResult{c2, QcsRoute::lindblad, p, false};
}

double qcs_lindblad_pure_form(const DensityOperator& rho1, double T) {
  if (!(T > 0.0 && T < 1.0)) throw DomainError("pure-state Lindblad form needs T in (0, 1)");
  const CMatrix r = apply_loss(rho1, T).matrix();
  const CMatrix rc = apply_loss(rho1, 1.0 - T).matrix();
  const double p = purity(r);
  if (p < kMinPurity) throw AccuracyError("purity underflow in QCS");
  return 2.0 * T / p * (number_purity(r) / T - number_purity(rc) / (1.0 - T)) + 1.0;
}

namespace {

// Rows: grid points, columns: Hermite functions psi_0..psi_{c-1}.
RMatrix hermite_functions(const RVector& x, int c) {
  RMatrix psi(x.size(), c);
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (int i = 0; i < x.size(); ++i) {
    psi(i, 0) = norm0 * std::exp(-0.5 * x[i] * x[i]);
    if (c > 1) psi(i, 1) = std::sqrt(2.0) * x[i] * psi(i, 0);
    for (int n = 1; n + 1 < c; ++n) {
      psi(i, n + 1) = std::sqrt(2.0 / (n + 1)) * x[i] * psi(i, n) -
                      std::sqrt(static_cast<double>(n) / (n + 1)) * psi(i, n - 1);
    }
  }
  return psi;
}

double kernel_moment(const CMatrix& rho, const RMatrix& psi, const RVector& x, double h) {
  const CMatrix k = psi.cast<Complex>() * rho * psi.transpose().cast<Complex>();
  double acc = 0.0;
  for (int j = 0; j < x.size(); ++j) {
    for (int i = 0; i < x.size(); ++i) {
      const double d = x[i] - x[j];
      acc += d * d * std::norm(k(i, j));
    }
  }
  return acc * h * h;
}

}  // namespace

KernelQcs qcs_kernel_form(const DensityOperator& rho, const KernelGrid& grid) {
  if (grid.n_points < 3 || !(grid.x_max > 0.0)) throw DomainError("invalid quadrature grid");
  const int c = rho.cutoff();
  const double h = 2.0 * grid.x_max / (grid.n_points - 1);
  RVector x(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) x[i] = -grid.x_max + i * h;
  const RMatrix psi = hermite_functions(x, c);

  KernelQcs out;
  for (int n = 0; n < c; ++n) {
    if (std::abs(h * psi.col(n).squaredNorm() - 1.0) > 1e-8) out.accuracy_warning = true;
  }
  const double p = purity(rho);
  if (p < kMinPurity) throw AccuracyError("purity underflow in QCS");
  // <p|n> = (-i)^n psi_n(p): the momentum kernel is the position kernel of
  // the state rotated by -pi/2.
  const CMatrix rho_p = rotate_phase(rho, -0.5 * std::numbers::pi).matrix();
  const double mx = kernel_moment(rho.matrix(), psi, x, h);
  const double mp = kernel_moment(rho_p, psi, x, h);
  out.c_squared = (mx + mp) / (2.0 * p);
  return out;
}

}  // namespace fockloss
