#pragma once
// Gauss-Laguerre rules and a polar product rule for integrals over the
// complex plane.

#include <complex>
#include <functional>
#include <vector>

namespace fockloss {

/// n-point Gauss-Laguerre rule for the weight e^{-x} on [0, inf).
/// `scaled_weights[i]` = weights[i] * e^{nodes[i]}, for integrands without the
/// weight factored out.
struct GaussLaguerre {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Nodes from the Golub-Welsch eigenproblem, polished by Newton steps on
/// L_n. Weights are formed in log space so large n does not underflow.
GaussLaguerre gauss_laguerre(int n);

/// Product rule for integral d^2 alpha over the plane: Gauss-Laguerre in
/// u = |alpha|^2 (with substitution v = scale * u) times an n_theta-point
/// trapezoid in arg(alpha). Exact for e^{-scale |alpha|^2} times polynomials
/// of low enough degree in alpha and alpha*.
class Quadrature2D {
 public:
  explicit Quadrature2D(int n_radial = 80, int n_angular = 128, double scale = 1.0);

  int n_radial() const { return static_cast<int>(rule_.nodes.size()); }
  int n_angular() const { return n_angular_; }
  double scale() const { return scale_; }

  /// Integral of f over the plane.
  double integrate(const std::function<double(std::complex<double>)>& f) const;

  /// Same, also returning in `outer_fraction` the share of |contributions|
  /// coming from the outermost 10% of radial nodes.
  double integrate(const std::function<double(std::complex<double>)>& f,
                   double* outer_fraction) const;

  /// Integral over u in [0, inf) of g(u) du, using the radial rule alone.
  double integrate_radial(const std::function<double(double)>& g) const;

  /// Angular average (1/2 pi) integral d theta f(sqrt(u) e^{i theta}).
  double angular_mean(const std::function<double(std::complex<double>)>& f, double u) const;

  /// Radius of node ring i.
  double radius(int i) const;

 private:
  GaussLaguerre rule_;
  int n_angular_;
  double scale_;
};

}  // namespace fockloss
