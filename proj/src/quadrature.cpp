#include "fockloss/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "fockloss/error.hpp"

namespace fockloss {

namespace {

// L_n(x) and L_{n-1}(x) by the three-term recurrence.
void laguerre_pair(int n, double x, double* ln, double* lnm1) {
  double prev = 1.0;
  double cur = 1.0 - x;
  if (n == 0) {
    *ln = 1.0;
    *lnm1 = 0.0;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  *ln = cur;
  *lnm1 = prev;
}

}  // namespace

GaussLaguerre gauss_laguerre(int n) {
  if (n < 1) throw DomainError("Gauss-Laguerre rule needs at least one node");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + 1.0;
  for (int i = 0; i + 1 < n; ++i) sub[i] = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);

  GaussLaguerre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()[i];
    double ln = 0.0;
    double lnm1 = 0.0;
    for (int it = 0; it < 8; ++it) {
      laguerre_pair(n, x, &ln, &lnm1);
      // x L_n' = n (L_n - L_{n-1})
      const double deriv = n * (ln - lnm1) / x;
      const double step = ln / deriv;
      x -= step;
      if (std::abs(step) <= 1e-15 * x) break;
    }
    laguerre_pair(n, x, &ln, &lnm1);
    // w = x / ((n+1)^2 L_{n+1}(x)^2), with (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}.
    const double lnp1_times = (2.0 * n + 1.0 - x) * ln - n * lnm1;
    const double log_w = std::log(x) - 2.0 * std::log(std::abs(lnp1_times));
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_w);
    rule.scaled_weights[i] = std::exp(log_w + x);
  }
  return rule;
}

Quadrature2D::Quadrature2D(int n_radial, int n_angular, double scale)
    : rule_(gauss_laguerre(n_radial)), n_angular_(n_angular), scale_(scale) {
  if (n_angular < 1) throw DomainError("angular rule needs at least one node");
  if (!(scale > 0.0)) throw DomainError("radial scale must be positive");
}

double Quadrature2D::radius(int i) const { return std::sqrt(rule_.nodes[i] / scale_); }

double Quadrature2D::integrate(const std::function<double(std::complex<double>)>& f) const {
  return integrate(f, nullptr);
}

double Quadrature2D::integrate(const std::function<double(std::complex<double>)>& f,
                               double* outer_fraction) const {
  const int nr = n_radial();
  const int outer_start = nr - std::max(1, nr / 10);
  const double dtheta = 2.0 * std::numbers::pi / n_angular_;
  double total = 0.0;
  double abs_total = 0.0;
  double abs_outer = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = radius(i);
    double ring = 0.0;
    double ring_abs = 0.0;
    for (int j = 0; j < n_angular_; ++j) {
      const double v = f(std::polar(r, j * dtheta));
      ring += v;
      ring_abs += std::abs(v);
    }
    const double w = rule_.scaled_weights[i];
    total += w * ring;
    abs_total += w * ring_abs;
    if (i >= outer_start) abs_outer += w * ring_abs;
  }
  if (outer_fraction) *outer_fraction = abs_total > 0.0 ? abs_outer / abs_total : 0.0;
  return std::numbers::pi / (scale_ * n_angular_) * total;
}

double Quadrature2D::integrate_radial(const std::function<double(double)>& g) const {
  double total = 0.0;
  for (int i = 0; i < n_radial(); ++i) total += rule_.scaled_weights[i] * g(rule_.nodes[i] / scale_);
  return total / scale_;
}

double Quadrature2D::angular_mean(const std::function<double(std::complex<double>)>& f,
                                  double u) const {
  const double r = std::sqrt(u);
  const double dtheta = 2.0 * std::numbers::pi / n_angular_;
  double acc = 0.0;
  for (int j = 0; j < n_angular_; ++j) acc += f(std::polar(r, j * dtheta));
  return acc / n_angular_;
}

}  // namespace fockloss
