#include "fockloss/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fockloss/csv.hpp"
#include "fockloss/error.hpp"
#include "fockloss/kernels/kernels.hpp"
#include "fockloss/loss.hpp"
#include "fockloss/purity.hpp"

namespace fockloss {

namespace {

constexpr double kPi = std::numbers::pi;

// Tr[rho M] for Hermitian rho, as one conjugated dot product over storage.
Complex trace_with(const CMatrix& rho, const CMatrix& m) {
  return kernels::cdotc({rho.data(), static_cast<std::size_t>(rho.size())},
                        {m.data(), static_cast<std::size_t>(m.size())});
}

Complex ipow(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

double max_photons(const DensityOperator& rho) { return std::max(0, rho.support()); }

QuadratureSpec checked(const QuadratureSpec& q) {
  if (q.n_radial < 1 || q.n_angular < 1) throw DomainError("quadrature sizes must be positive");
  return q;
}

void require_lossy_T(double T) {
  if (!(T > 0.0 && T <= 1.0)) throw DomainError("T must lie in (0, 1]");
}

CheckReport complex_equality(std::string name, Complex lhs, Complex rhs, double tol,
                             std::string anchor) {
  CheckReport r = CheckReport::equality(std::move(name), lhs.real(), rhs.real(), tol,
                                        std::move(anchor));
  r.margin = -std::abs(lhs - rhs);
  r.pass = std::isfinite(r.margin) && r.margin >= -tol;
  return r;
}

}  // namespace

Complex char_fn(const DensityOperator& rho, Complex alpha, double s) {
  const CMatrix d = displacement_matrix(alpha, rho.cutoff());
  return trace_with(rho.matrix(), d) * std::exp(0.5 * s * std::norm(alpha));
}

CMatrix kernel_matrix(Complex alpha, double s, int cutoff) {
  if (!(s < 1.0)) throw DomainError("pointwise quasiprobabilities need s < 1");
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  const double u = std::norm(alpha);
  const double a = 2.0 / (1.0 - s);
  const double y = a * a * u;
  const double q = (s + 1.0) / (s - 1.0);
  const double gauss = std::exp(-a * u);
  CMatrix k(cutoff, cutoff);
  for (int d = 0; d < cutoff; ++d) {
    const Complex ad = ipow(alpha, d) * std::pow(a, d + 1) * gauss;
    // sum_j C(n+d, n-j) y^j q^{n-j} / j!  =  q^n L_n^{(d)}(-y/q)  for q != 0.
    double lm1 = 0.0;
    double l = 1.0;
    const double x = q != 0.0 ? -y / q : 0.0;
    double qn = 1.0;
    double yn_over_fact = 1.0;
    for (int n = 0; n + d < cutoff; ++n) {
      if (n > 0) {
        qn *= q;
        yn_over_fact *= y / n;
      }
      if (n == 1) {
        lm1 = 1.0;
        l = 1.0 + d - x;
      } else if (n > 1) {
        const double next = ((2.0 * (n - 1) + 1.0 + d - x) * l - (n - 1 + d) * lm1) / n;
        lm1 = l;
        l = next;
      }
      const double poly = q != 0.0 ? qn * l : yn_over_fact;
      const int m = n + d;
      const double ratio = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
      const Complex v = ratio * ad * poly;
      k(m, n) = v;
      if (d > 0) k(n, m) = std::conj(v);
    }
  }
  return k;
}

double quasi_prob(const DensityOperator& rho, Complex alpha, double s) {
  const Complex v = trace_with(rho.matrix(), kernel_matrix(alpha, s, rho.cutoff())) / kPi;
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real()))) {
    throw AccuracyError("quasiprobability has a non-negligible imaginary part");
  }
  return v.real();
}

double wigner_parity(const DensityOperator& rho, Complex alpha, int pad) {
  const int c = rho.cutoff() + pad;
  const CMatrix d = displacement_matrix(alpha, c);
  const CMatrix moved = d.adjoint() * rho.padded(c).matrix() * d;
  double acc = 0.0;
  for (int k = 0; k < c; ++k) acc += (k % 2 == 0 ? 1.0 : -1.0) * moved(k, k).real();
  return 2.0 / kPi * acc;
}

double quasi_prob_fourier(const DensityOperator& rho, Complex alpha, double s,
                          const QuadratureSpec& q) {
  if (!(s < 1.0)) throw DomainError("Fourier evaluation needs s < 1");
  checked(q);
  // chi(beta, s) decays as e^{-(1-s)|beta|^2/2}.
  const Quadrature2D quad(q.n_radial, q.n_angular, 0.5 * (1.0 - s));
  const double re = quad.integrate([&](Complex beta) {
    const Complex phase = std::exp(std::conj(beta) * alpha - beta * std::conj(alpha));
    return (phase * char_fn(rho, beta, s)).real();
  });
  return re / (kPi * kPi);
}

CheckReport loss_identity_quasi(const DensityOperator& rho1, double T, Complex alpha, double s) {
  require_lossy_T(T);
  const double s_in = (s + T - 1.0) / T;
  const double lhs = quasi_prob(apply_loss(rho1, T), alpha, s);
  const double rhs = quasi_prob(rho1, alpha / std::sqrt(T), s_in) / T;
  std::ostringstream p;
  p << "T=" << T << ";s=" << s << ";alpha=" << alpha.real() << "+" << alpha.imag() << "i";
  return CheckReport::equality("loss_identity_quasi", lhs, rhs, 1e-8,
                               "P_T(a,s) = P_1(a/sqrt T,(s+T-1)/T)/T")
      .with_params(p.str());
}

CheckReport loss_identity_chi(const DensityOperator& rho1, double T, Complex alpha, double s) {
  require_lossy_T(T);
  const double s_in = (s + T - 1.0) / T;
  const Complex lhs = char_fn(apply_loss(rho1, T), alpha, s);
  const Complex rhs = char_fn(rho1, std::sqrt(T) * alpha, s_in);
  std::ostringstream p;
  p << "T=" << T << ";s=" << s << ";alpha=" << alpha.real() << "+" << alpha.imag() << "i";
  return complex_equality("loss_identity_chi", lhs, rhs, 1e-9,
                          "chi_T(a,s) = chi_1(sqrt T a,(s+T-1)/T)")
      .with_params(p.str());
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

Complex GridSpec::point(int i, int j) const {
  const double h = spacing();
  return center + Complex{-half_width + i * h, -half_width + j * h};
}

GridSpec default_grid(const DensityOperator& rho, int n) {
  return GridSpec{{0.0, 0.0}, 6.0 + std::sqrt(max_photons(rho)), n};
}

double QuasiProbGrid::min_value() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

QuasiProbGrid sample_grid(const std::function<double(Complex)>& f, double s,
                          const GridSpec& spec) {
  if (spec.n < 2 || !(spec.half_width > 0.0)) throw DomainError("grid needs n >= 2 and a positive width");
  QuasiProbGrid g;
  g.s = s;
  g.spec = spec;
  g.values.resize(static_cast<std::size_t>(spec.n) * spec.n);
  double sum = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      const double v = f(spec.point(i, j));
      g.values[static_cast<std::size_t>(i) * spec.n + j] = v;
      sum += v;
    }
  }
  const double h = spec.spacing();
  g.normalization = sum * h * h;
  return g;
}

QuasiProbGrid quasi_prob_grid(const DensityOperator& rho, double s, const GridSpec& spec) {
  return sample_grid([&](Complex a) { return quasi_prob(rho, a, s); }, s, spec);
}

QuasiProbGrid convolve_quasi(const QuasiProbGrid& grid, double delta_s) {
  if (!(delta_s < 0.0)) throw DomainError("only smoothing (delta_s < 0) convolutions are supported");
  const int n = grid.spec.n;
  const double h = grid.spec.spacing();
  // 1D factor of the normalized Gaussian, sampled on all lattice offsets.
  const double width = -2.0 / delta_s;
  const double norm1d = std::sqrt(width / kPi) * h;
  std::vector<double> table(2 * n - 1);
  for (int o = -(n - 1); o <= n - 1; ++o) {
    const double d = o * h;
    table[o + n - 1] = norm1d * std::exp(-width * d * d);
  }
  std::vector<double> pass1(grid.values.size());
  for (int i = 0; i < n; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * n;
    kernels::correlate_offsets({grid.values.data() + off, static_cast<std::size_t>(n)}, table,
                               {pass1.data() + off, static_cast<std::size_t>(n)});
  }
  QuasiProbGrid out;
  out.s = grid.s + delta_s;
  out.spec = grid.spec;
  out.values.resize(grid.values.size());
  std::vector<double> col(n);
  std::vector<double> res(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = pass1[static_cast<std::size_t>(i) * n + j];
    kernels::correlate_offsets(col, table, res);
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i) * n + j] = res[i];
  }
  double sum = 0.0;
  for (double v : out.values) sum += v;
  out.normalization = sum * h * h;
  return out;
}

// ---------------------------------------------------------------------------
// Purity and overlaps from phase space
// ---------------------------------------------------------------------------

double overlap_from_quasi(const DensityOperator& rho, const DensityOperator& sigma, double s,
                          const QuadratureSpec& q) {
  if (!(std::abs(s) < 1.0)) throw DomainError("overlap formula needs |s| < 1 for pointwise kernels");
  if (rho.cutoff() != sigma.cutoff()) throw DimensionError("operands have different cutoffs");
  checked(q);
  const int c = rho.cutoff();
  // The product of both kernels carries e^{-4|alpha|^2/(1-s^2)}.
  const Quadrature2D quad(q.n_radial, q.n_angular, 4.0 / (1.0 - s * s));
  const double integral = quad.integrate([&](Complex a) {
    const double pr = trace_with(rho.matrix(), kernel_matrix(a, s, c)).real() / kPi;
    const double ps = trace_with(sigma.matrix(), kernel_matrix(a, -s, c)).real() / kPi;
    return pr * ps;
  });
  return kPi * integral;
}

double purity_from_chi(const DensityOperator& rho, double s, const QuadratureSpec& q) {
  checked(q);
  const Quadrature2D quad(q.n_radial, q.n_angular, 1.0);
  double outer = 0.0;
  const double integral = quad.integrate(
      [&](Complex a) { return std::exp(-s * std::norm(a)) * std::norm(char_fn(rho, a, s)); },
      &outer);
  if (!std::isfinite(integral) || outer > 1e-6) {
    throw AccuracyError("characteristic-function purity integrand does not decay");
  }
  return integral / kPi;
}

double purity_lossy_from_chi(const DensityOperator& rho1, double T, double s,
                             const QuadratureSpec& q) {
  require_lossy_T(T);
  checked(q);
  const Quadrature2D quad(q.n_radial, q.n_angular, 1.0 / T);
  double outer = 0.0;
  bool negative = false;
  const double integral = quad.integrate(
      [&](Complex a) {
        const double u = std::norm(a);
        const double v = std::exp(-u / T) / T *
                         std::norm(std::exp(0.5 * (1.0 - s) * u) * char_fn(rho1, a, s));
        if (v < 0.0) negative = true;
        return v;
      },
      &outer);
  if (negative) throw AccuracyError("lossy purity integrand negative at a node");
  if (!std::isfinite(integral) || outer > 1e-6) {
    throw AccuracyError("lossy purity integrand does not decay");
  }
  return integral / kPi;
}

double phase_averaged_chi_sq(const DensityOperator& rho, double tau, int n_angular) {
  if (tau < 0.0) throw DomainError("tau must be nonnegative");
  if (n_angular < 1) throw DomainError("angular rule needs at least one node");
  const double r = std::sqrt(tau);
  double acc = 0.0;
  for (int j = 0; j < n_angular; ++j) {
    acc += std::norm(char_fn(rho, std::polar(r, 2.0 * kPi * j / n_angular), 1.0));
  }
  return acc / n_angular;
}

double laplace_purity(const DensityOperator& rho1, double T, const QuadratureSpec& q) {
  require_lossy_T(T);
  checked(q);
  const Quadrature2D quad(q.n_radial, q.n_angular, 1.0 / T);
  return quad.integrate_radial([&](double tau) {
    return std::exp(-tau / T) * phase_averaged_chi_sq(rho1, tau, q.n_angular) / T;
  });
}

void write_grid_csv(std::ostream& os, const QuasiProbGrid& grid, double T,
                    const std::string& state) {
  os << "# s=" << format_double(grid.s) << ",T=" << format_double(T) << ",state=" << state
     << '\n';
  CsvWriter w(os);
  w.row({"re_alpha", "im_alpha", "value"});
  for (int i = 0; i < grid.spec.n; ++i) {
    for (int j = 0; j < grid.spec.n; ++j) {
      const Complex a = grid.spec.point(i, j);
      w.row({format_double(a.real()), format_double(a.imag()), format_double(grid.at(i, j))});
    }
  }
}

}  // namespace fockloss
