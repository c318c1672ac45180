#include "fockloss/conjectures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockloss/csv.hpp"
#include "fockloss/error.hpp"
#include "fockloss/purity.hpp"

namespace fockloss {

std::string_view disposition_name(Disposition d) {
  switch (d) {
    case Disposition::no_violation_found:
      return "no-violation-found";
    case Disposition::violation:
      return "violation";
    case Disposition::proven_case_verified:
      return "proven-case-verified";
  }
  return "unknown";
}

ScanResult run_scan(std::string name, std::string state_id, const std::vector<double>& grid,
                    const MarginFn& fn, bool proven) {
  if (grid.empty()) throw DomainError("scan grid must be nonempty");
  ScanResult res;
  res.name = std::move(name);
  res.state_id = std::move(state_id);
  res.grid = grid;
  res.margins.reserve(grid.size());
  res.min_margin = std::numeric_limits<double>::infinity();
  res.argmin = grid.front();
  const double lo = *std::min_element(grid.begin(), grid.end());
  const double hi = *std::max_element(grid.begin(), grid.end());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MarginEval e = fn(grid[i]);
    res.margins.push_back(e.margin);
    res.tolerance = std::max(res.tolerance, e.tolerance);
    if (e.margin < res.min_margin) {
      res.min_margin = e.margin;
      res.argmin = grid[i];
    }
    if (!(e.margin < -e.tolerance)) continue;
    // Confirm on a finer local grid with a tighter tolerance.
    double step = 0.0;
    if (i > 0) step = std::abs(grid[i] - grid[i - 1]);
    if (i + 1 < grid.size()) step = std::max(step, std::abs(grid[i + 1] - grid[i]));
    bool confirmed = true;
    const double x = grid[i];
    for (int j = -10; j <= 10 && confirmed; ++j) {
      const double y = x + j * step / 10.0;
      if (y < lo || y > hi) continue;
      const MarginEval r = fn(y);
      if (j == 0) confirmed = r.margin < -0.1 * r.tolerance;
    }
    if (confirmed) res.violations.push_back(x);
  }
  if (!res.violations.empty()) {
    res.disposition = Disposition::violation;
  } else {
    res.disposition = proven ? Disposition::proven_case_verified : Disposition::no_violation_found;
  }
  return res;
}

MarginEval log_convexity_margin(const DensityOperator& rho1, double T) {
  const PurityPolynomial p = purity_polynomial(rho1);
  const double v = p.value(T);
  const double d1 = p.derivative(T, 1);
  const double d2 = p.derivative(T, 2);
  return {v * d2 - d1 * d1, 1e-10 * std::max(1.0, std::abs(v * d2) + d1 * d1)};
}

ScanResult log_convexity_scan(const DensityOperator& rho1, const std::vector<double>& T_grid,
                              std::string state_id) {
  const PurityPolynomial p = purity_polynomial(rho1);
  return run_scan("log_convexity", std::move(state_id), T_grid, [&](double T) {
    const double v = p.value(T);
    const double d1 = p.derivative(T, 1);
    const double d2 = p.derivative(T, 2);
    return MarginEval{v * d2 - d1 * d1, 1e-10 * std::max(1.0, std::abs(v * d2) + d1 * d1)};
  });
}

ScanResult convexity_scan(const DensityOperator& rho1, const std::vector<double>& T_grid,
                          std::string state_id) {
  const PurityPolynomial p = purity_polynomial(rho1);
  return run_scan("convexity", std::move(state_id), T_grid, [&](double T) {
    const double d2 = p.derivative(T, 2);
    return MarginEval{d2, 1e-10 * std::max(1.0, std::abs(d2))};
  });
}

namespace {

struct Moments {
  double a = 0.0;  // sum q l^n
  double c = 0.0;  // first factored moment
  double b = 0.0;  // second factored moment
};

std::string lambda_param(double lambda) {
  std::ostringstream os;
  os << "lambda=" << lambda;
  return os.str();
}

std::string_view basis_name(PhiBasis b) {
  return b == PhiBasis::input_modes ? "input_modes" : "output_ports";
}

}  // namespace

CheckReport ell_log_convexity_check(const DensityOperator& rho1, double T) {
  if (!(T < 0.5)) throw DomainError("log-convexity in l needs T < 1/2");
  const PurityPolynomial poly = purity_polynomial(rho1);
  const double lambda = 1.0 - 2.0 * T;
  Moments m;
  double pw = 1.0;
  for (std::size_t n = 0; n < poly.p.size(); ++n) {
    const double dn = static_cast<double>(n);
    m.a += poly.p[n] * pw;
    m.c += poly.p[n] * dn * pw;
    m.b += poly.p[n] * dn * dn * pw;
    pw *= lambda;
  }
  const double rhs = m.a * m.b;
  std::ostringstream ps;
  ps << "T=" << T;
  return CheckReport::inequality("ell_log_convexity", m.c * m.c, rhs,
                                 1e-10 * std::max(1.0, std::abs(rhs)),
                                 "Tr[e^{lN}N]^2 <= Tr[e^{lN}] Tr[e^{lN}N^2] on rho x rho")
      .with_params(ps.str());
}

std::vector<double> dark_port_populations(const TwoModeOperator& phi, PhiBasis basis) {
  if (basis == PhiBasis::input_modes) return dark_port_distribution(phi);
  std::vector<double> q(phi.cutoff2, 0.0);
  for (int n1 = 0; n1 < phi.cutoff1; ++n1) {
    for (int n2 = 0; n2 < phi.cutoff2; ++n2) {
      const int i = phi.index(n1, n2);
      q[n2] += phi.matrix(i, i).real();
    }
  }
  return q;
}

CheckReport unfairness_witness(const TwoModeOperator& phi, double lambda, PhiBasis basis) {
  if (!(std::abs(lambda) <= 1.0)) throw DomainError("unfairness witness needs |lambda| <= 1");
  const std::vector<double> q = dark_port_populations(phi, basis);
  // Powers l^n, l^{n-1} n, l^{n-2} n(n-1) built with the N factors first.
  Moments m;
  for (std::size_t n = 0; n < q.size(); ++n) {
    const double dn = static_cast<double>(n);
    m.a += q[n] * std::pow(lambda, dn);
    if (n >= 1) m.c += q[n] * dn * std::pow(lambda, dn - 1.0);
    if (n >= 2) m.b += q[n] * dn * (dn - 1.0) * std::pow(lambda, dn - 2.0);
  }
  const double rhs = m.a * m.b;
  std::ostringstream ps;
  ps << lambda_param(lambda) << ";basis=" << basis_name(basis);
  return CheckReport::inequality("unfairness_witness", m.c * m.c, rhs,
                                 1e-10 * std::max(1.0, std::abs(rhs)),
                                 "Tr[Phi l^{N-1}N]^2 <= Tr[Phi l^N] Tr[Phi l^{N-2}N(N-1)]")
      .with_params(ps.str());
}

CheckReport lambda_zero_witness(const TwoModeOperator& phi, PhiBasis basis) {
  std::vector<double> q = dark_port_populations(phi, basis);
  q.resize(std::max<std::size_t>(q.size(), 3), 0.0);
  std::ostringstream ps;
  ps << "basis=" << basis_name(basis) << ";q0=" << q[0] << ";q1=" << q[1] << ";q2=" << q[2];
  return CheckReport::inequality("lambda_zero_witness", q[1] * q[1], 2.0 * q[2] * q[0],
                                 1e-10, "2 q2 q0 - q1^2 >= 0")
      .with_params(ps.str());
}

DensityOperator dark_port_state(const DensityOperator& rho1, double T) {
  if (!(T <= 0.5)) throw DomainError("dark-port state needs T <= 1/2");
  const int c = rho1.cutoff();
  const int max_total = 2 * c - 2;
  const int out_c = 2 * c - 1;
  const double lambda = 1.0 - 2.0 * T;
  const CMatrix& r = rho1.matrix();
  std::vector<CMatrix> u(max_total + 1);
  for (int n = 0; n <= max_total; ++n) {
    u[n] = beam_splitter_block(-std::numbers::pi / 4.0, n).cast<Complex>();
  }
  CMatrix out = CMatrix::Zero(out_c, out_c);
  for (int nt = 0; nt <= max_total; ++nt) {
    for (int mt = 0; mt <= max_total; ++mt) {
      // Block of rho x rho between totals nt and mt, in |k, total-k>.
      CMatrix m = CMatrix::Zero(nt + 1, mt + 1);
      bool any = false;
      for (int k = std::max(0, nt - c + 1); k <= std::min(nt, c - 1); ++k) {
        for (int kp = std::max(0, mt - c + 1); kp <= std::min(mt, c - 1); ++kp) {
          m(k, kp) = r(k, kp) * r(nt - k, mt - kp);
          any = true;
        }
      }
      if (!any) continue;
      const CMatrix o = u[nt] * m * u[mt].transpose();
      // Trace out mode 1 (photon number k on both sides); mode 2 is the dark port.
      for (int k = 0; k <= std::min(nt, mt); ++k) {
        const int n = nt - k;
        const int np = mt - k;
        const double w = std::pow(lambda, 0.5 * (n + np));
        out(n, np) += w * o(k, k);
      }
    }
  }
  const double tr = out.trace().real();
  if (!(tr > 0.0)) throw NonStateError("dark-port operator has no weight");
  out /= tr;
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator::trusted(std::move(out), rho1.kind());
}

std::optional<double> gn(const DensityOperator& rho, int n) {
  if (n < 1) throw DomainError("correlation order must be at least 1");
  const double mean = rho.mean_photon_number();
  if (!(mean > 1e-12)) return std::nullopt;
  double num = 0.0;
  for (int k = n; k < rho.cutoff(); ++k) {
    double falling = 1.0;
    for (int j = 0; j < n; ++j) falling *= k - j;
    num += falling * rho.matrix()(k, k).real();
  }
  return num / std::pow(mean, n);
}

std::optional<double> g2(const DensityOperator& rho) { return gn(rho, 2); }

MarginEval dark_port_g2_margin(const DensityOperator& rho1, double T) {
  const auto g = g2(dark_port_state(rho1, T));
  if (!g) return {std::numeric_limits<double>::infinity(), 1e-8};
  return {*g - 1.0, 1e-8};
}

void write_scan_csv(std::ostream& os, const std::vector<ScanResult>& scans) {
  CsvWriter w(os);
  w.row({"conjecture", "state_id", "T_or_lambda", "margin"});
  for (const ScanResult& s : scans) {
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      w.row({s.name, s.state_id, format_double(s.grid[i]), format_double(s.margins[i])});
    }
  }
}

}  // namespace fockloss
