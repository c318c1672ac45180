#include "fockloss/loss.hpp"

#include <cmath>
#include <sstream>

#include "fockloss/error.hpp"

namespace fockloss {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

void require_physical(double T) {
  if (!(T >= 0.0 && T <= 1.0)) {
    std::ostringstream os;
    os << "Kraus representation needs T in [0, 1], got " << T;
    throw DomainError(os.str());
  }
}

}  // namespace

LossParameter LossParameter::from_damping(double gamma, double t) {
  return LossParameter{std::exp(-gamma * t)};
}

LossParameter LossParameter::from_angle(double theta) {
  const double c = std::cos(0.5 * theta);
  return LossParameter{c * c};
}

LossParameter LossParameter::from_efficiency(double eta) { return LossParameter{eta}; }

KrausSet kraus_set(double T, int cutoff) {
  require_physical(T);
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  KrausSet set{T, {}};
  set.ops.reserve(cutoff);
  for (int n = 0; n < cutoff; ++n) {
    RMatrix k = RMatrix::Zero(cutoff, cutoff);
    for (int m = n; m < cutoff; ++m) {
      // K_n |m> = sqrt(C(m,n)) (1-T)^{n/2} T^{(m-n)/2} |m-n>
      k(m - n, m) = std::sqrt(binomial(m, n)) * std::pow(1.0 - T, 0.5 * n) *
                    std::pow(T, 0.5 * (m - n));
    }
    set.ops.push_back(std::move(k));
  }
  return set;
}

KrausSet kraus_set_reordered(double T, int cutoff) {
  require_physical(T);
  if (T == 0.0) throw DomainError("reordered Kraus form is singular at T = 0");
  const RMatrix a = annihilation(cutoff);
  RMatrix sqrt_t_n = RMatrix::Zero(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) sqrt_t_n(m, m) = std::pow(T, 0.5 * m);
  const RMatrix scaled = std::sqrt((1.0 - T) / T) * a;
  KrausSet set{T, {}};
  RMatrix power = RMatrix::Identity(cutoff, cutoff);
  double factorial = 1.0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) {
      power = power * scaled;
      factorial *= n;
    }
    set.ops.push_back(power * sqrt_t_n / std::sqrt(factorial));
  }
  return set;
}

DensityOperator apply_loss(const DensityOperator& rho, double T) {
  const int c = rho.cutoff();
  if (T >= 0.0 && T <= 1.0) {
    const KrausSet set = kraus_set(T, c);
    CMatrix out = CMatrix::Zero(c, c);
    for (const RMatrix& k : set.ops) {
      const CMatrix kc = k.cast<Complex>();
      out.noalias() += kc * rho.matrix() * kc.transpose();
    }
    return DensityOperator::trusted(std::move(out), rho.kind());
  }
  // Analytic continuation: only the Fock-diagonal binomial map is polynomial
  // in T without square roots.
  CMatrix off = rho.matrix();
  off.diagonal().setZero();
  if (off.size() > 0 && off.cwiseAbs().maxCoeff() > 1e-14) {
    throw DomainError("loss outside T in [0, 1] is only defined for Fock-diagonal operators");
  }
  CMatrix out = CMatrix::Zero(c, c);
  for (int i = 0; i < c; ++i) {
    double acc = 0.0;
    for (int k = 0; i + k < c; ++k) {
      acc += rho.matrix()(i + k, i + k).real() * binomial(i + k, k) * std::pow(1.0 - T, k) *
             std::pow(T, i);
    }
    out(i, i) = acc;
  }
  return DensityOperator::trusted(std::move(out), DensityOperator::Kind::nonpositive);
}

DensityOperator apply_loss(const PureState& psi, double T) { return apply_loss(psi.density(), T); }

CMatrix loss_generator(const DensityOperator& rho_T, double T) {
  if (T == 0.0) throw DomainError("loss generator is singular at T = 0");
  const ModeOperators ops = mode_operators(rho_T.cutoff());
  const CMatrix& r = rho_T.matrix();
  return (-0.5 / T) * (2.0 * ops.a * r * ops.adag - ops.n * r - r * ops.n);
}

CheckReport multiplicativity_check(const DensityOperator& rho, double T1, double T2) {
  require_physical(T1);
  require_physical(T2);
  const DensityOperator twice = apply_loss(apply_loss(rho, T2), T1);
  const DensityOperator once = apply_loss(rho, T1 * T2);
  const double dev = max_abs_diff(twice.matrix(), once.matrix());
  std::ostringstream params;
  params << "T1=" << T1 << ";T2=" << T2;
  return CheckReport::inequality("loss_multiplicativity", dev, 0.0, 1e-10,
                                 "E_T1 E_T2 = E_{T1 T2}")
      .with_params(params.str());
}

}  // namespace fockloss
