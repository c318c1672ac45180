#include "fockloss/cli/commands.hpp"

#include <Eigen/Eigenvalues>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "fockloss/conjectures.hpp"
#include "fockloss/csv.hpp"
#include "fockloss/inequalities.hpp"
#include "fockloss/loss.hpp"
#include "fockloss/phase_space.hpp"
#include "fockloss/purity.hpp"
#include "fockloss/qcs.hpp"

namespace fockloss::cli {

namespace {

std::string kv(const std::string& key, double v) { return key + "=" + format_double(v); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

bool is_pure_state(const DensityOperator& rho) { return std::abs(purity(rho) - 1.0) <= 1e-10; }

PureState dominant_vector(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
  return PureState(es.eigenvectors().col(rho.cutoff() - 1));
}

std::vector<NamedState> load_states(const RunConfig& cfg) {
  if (cfg.states.empty()) throw UsageError("no states given (use --states)");
  std::vector<NamedState> all;
  for (const std::string& spec : cfg.states) {
    auto part = expand_state_spec(spec, cfg.seed, cfg.allow_nonpositive);
    for (auto& s : part) all.push_back(std::move(s));
  }
  return all;
}

std::vector<double> grid_or(const RunConfig& cfg, GridRange fallback) {
  return (cfg.grid ? *cfg.grid : fallback).points();
}

// Output goes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : os_(&fallback) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + cfg.out + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void apply_tolerance(const RunConfig& cfg, std::vector<CheckReport>& reports) {
  if (!cfg.tol) return;
  for (auto& r : reports) {
    r.tolerance = *cfg.tol;
    r.pass = std::isfinite(r.margin) && r.margin >= -r.tolerance;
  }
}

void add(std::vector<CheckReport>& out, CheckReport r, const std::string& id) {
  r.with_state(id);
  out.push_back(std::move(r));
}

// ---------------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------------

void purity_suite(const NamedState& st, const std::vector<double>& Ts,
                  std::vector<CheckReport>& out) {
  const DensityOperator& rho = st.rho;
  const PurityPolynomial poly = purity_polynomial(rho);
  const bool pure = is_pure_state(rho);
  const double min_p = *std::min_element(poly.p.begin(), poly.p.end());
  add(out, CheckReport::inequality("dark_port_coefficients", 0.0, min_p, 1e-10,
                                   "p_m >= 0"),
      st.id);
  add(out, CheckReport::equality("dark_port_total", poly.sum(), 1.0, 1e-10, "sum p_m = 1"),
      st.id);
  if (pure) {
    double odd = 0.0;
    for (std::size_t m = 1; m < poly.p.size(); m += 2) odd = std::max(odd, std::abs(poly.p[m]));
    add(out, CheckReport::inequality("dark_port_odd_vanish", odd, 0.0, 1e-10,
                                     "pure input: odd p_m = 0"),
        st.id);
  }
  for (double T : Ts) {
    const std::string p = kv("T", T);
    if (T >= 0.0 && T <= 1.0) {
      add(out,
          CheckReport::equality("purity_polynomial", purity(apply_loss(rho, T)), poly.value(T),
                                1e-10, "Tr[rho_T^2] = sum p_m lambda^m")
              .with_params(p),
          st.id);
    }
    if (pure) {
      add(out,
          CheckReport::equality("purity_symmetry", poly.value(T), poly.value(1.0 - T), 1e-10,
                                "pure input: P(T) = P(1-T)")
              .with_params(p),
          st.id);
    }
    if (pure || T <= 0.5) {
      const double d2 = poly.derivative(T, 2);
      add(out,
          CheckReport::inequality("purity_convexity", 0.0, d2, 1e-9, "d^2P/dT^2 >= 0")
              .with_params(p),
          st.id);
    }
    if (T > 0.0 && T < 1.0) {
      add(out, multiplicativity_check(rho, T, 0.5), st.id);
    }
    if (T >= 0.05 - 1e-12 && T <= 0.95 + 1e-12) {
      add(out, entropy_concavity_check(rho, T), st.id);
    }
  }
}

void qcs_suite(const NamedState& st, const std::vector<double>& Ts,
               std::vector<CheckReport>& out) {
  const DensityOperator& rho = st.rho;
  const bool pure = is_pure_state(rho);
  for (double T : Ts) {
    if (!(T >= 0.0 && T <= 1.0)) throw UsageError("qcs suite needs T in [0, 1]");
    const std::string p = kv("T", T);
    const double c_rate = qcs_purity_rate(rho, T).c_squared;
    const double c_comm = qcs_commutator(apply_loss(rho, T)).c_squared;
    add(out,
        CheckReport::equality("qcs_commutator_vs_rate", c_comm, c_rate, 1e-8,
                              "commutator and purity-rate QCS agree")
            .with_params(p),
        st.id);
    if (T > 0.0) {
      add(out,
          CheckReport::equality("qcs_lindblad_vs_rate", qcs_lindblad(rho, T).c_squared, c_rate,
                                1e-8, "Lindbladian and purity-rate QCS agree")
              .with_params(p),
          st.id);
    }
    if (pure && near(T, 0.5)) {
      add(out,
          CheckReport::equality("qcs_pure_half_loss", c_comm, 1.0, 1e-8,
                                "pure input: C^2 = 1 at T = 1/2")
              .with_params(p),
          st.id);
    }
    if (T <= 0.5 + 1e-12) {
      add(out,
          CheckReport::inequality("qcs_loss_bound", c_comm, 1.0, 1e-8, "C^2 <= 1 for T <= 1/2")
              .with_params(p),
          st.id);
    } else if (pure) {
      add(out,
          CheckReport::inequality("qcs_pure_above_half", 1.0, c_comm, 1e-8,
                                  "pure input: C^2 >= 1 for T >= 1/2")
              .with_params(p),
          st.id);
    }
  }
}

void phase_space_suite(const NamedState& st, const std::vector<double>& Ts, const RunConfig& cfg,
                       std::vector<CheckReport>& out) {
  const DensityOperator& rho = st.rho;
  const QuadratureSpec q{cfg.quad_radial, cfg.quad_angular};
  const double tp = purity(rho);
  add(out,
      CheckReport::equality("purity_from_chi", purity_from_chi(rho, 0.0, q), tp, 1e-5,
                            "int |chi|^2 d^2 alpha / pi = Tr[rho^2]"),
      st.id);
  const PurityPolynomial poly = purity_polynomial(rho);
  for (double T : Ts) {
    if (!(T >= 0.0 && T <= 1.0)) throw UsageError("phase-space suite needs T in [0, 1]");
    const std::string p = kv("T", T);
    if (T > 0.0) {
      add(out,
          CheckReport::equality("laplace_purity", laplace_purity(rho, T, q), poly.value(T), 1e-5,
                                "Laplace-transform purity matches the trace")
              .with_params(p),
          st.id);
      add(out, loss_identity_quasi(rho, T, Complex(0.3, -0.2), 0.0), st.id);
    }
    if (T <= 0.5 + 1e-12) {
      const DensityOperator rt = apply_loss(rho, T);
      const QuasiProbGrid w = quasi_prob_grid(rt, 0.0, default_grid(rt, 61));
      add(out,
          CheckReport::inequality("wigner_nonnegative_after_half_loss", 0.0, w.min_value(), 1e-9,
                                  "W(rho_T) >= 0 for T <= 1/2")
              .with_params(p),
          st.id);
    }
  }
}

void inequality_suite(const NamedState& st, const std::vector<double>& Ts,
                      std::vector<CheckReport>& out) {
  const DensityOperator& rho = st.rho;
  const bool pure = is_pure_state(rho);
  add(out, cauchy_schwarz_ladder(rho), st.id);
  add(out, bernstein_check(rho, 4), st.id);
  std::vector<double> mono;
  for (double T : Ts) {
    if (T > 0.0 && T <= 1.0) mono.push_back(T);
  }
  if (mono.size() >= 2) add(out, number_purity_monotonicity(rho, mono), st.id);
  std::optional<PureState> psi;
  if (pure) {
    psi = dominant_vector(rho);
    add(out, pure_second_order_inequality(*psi), st.id);
  }
  for (double T : Ts) {
    if (T > 0.0 && T <= 0.5) add(out, corollary_loss_ladder(rho, T), st.id);
    if (T > 0.0 && T < 1.0) add(out, appendix_c_second_derivative(rho, T), st.id);
    if (T > 0.0 && T <= 1.0) add(out, derivative_route_check(rho, T), st.id);
    if (pure || T <= 0.5) {
      for (int k = 1; k <= 3; ++k) add(out, corollary6_sign_check(rho, T, k), st.id);
    }
    if (psi && T > 0.0 && T < 1.0) add(out, transpose_trick_identity(*psi, T), st.id);
    if (psi && T > 0.0 && T <= 0.5) add(out, corollary_pure_ratio(*psi, T), st.id);
  }
}

// ---------------------------------------------------------------------------
// Named two-mode operators
// ---------------------------------------------------------------------------

TwoModeOperator named_phi(const std::string& name) {
  CVector v = CVector::Zero(4);  // cutoffs (2, 2), index n1*2 + n2
  if (name == "bell-like") {
    v[0] = 1.0 / std::sqrt(2.0);
    v[3] = -1.0 / std::sqrt(2.0);
  } else if (name == "01") {
    v[1] = 1.0;
  } else if (name == "10") {
    v[2] = 1.0;
  } else if (name == "11") {
    v[3] = 1.0;
  } else if (name == "vacuum") {
    v[0] = 1.0;
  } else {
    throw UsageError("unknown --phi '" + name + "' (bell-like, 01, 10, 11, vacuum)");
  }
  return TwoModeOperator(v * v.adjoint(), 2, 2);
}

PhiBasis parse_basis(const std::string& s, PhiBasis fallback) {
  if (s.empty()) return fallback;
  if (s == "input") return PhiBasis::input_modes;
  if (s == "output") return PhiBasis::output_ports;
  throw UsageError("--phi-basis must be input or output");
}

}  // namespace

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::vector<std::string> known{"purity", "qcs", "phase_space", "inequalities", "all"};
  if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) {
    throw UsageError("unknown suite '" + cfg.suite + "'");
  }
  const auto states = load_states(cfg);
  const auto Ts = grid_or(cfg, GridRange{0.0, 1.0, 11});
  std::vector<CheckReport> reports;
  const bool all = cfg.suite == "all";
  for (const NamedState& st : states) {
    if (all || cfg.suite == "purity") purity_suite(st, Ts, reports);
    if (all || cfg.suite == "qcs") qcs_suite(st, Ts, reports);
    if (all || cfg.suite == "phase_space") phase_space_suite(st, Ts, cfg, reports);
    if (all || cfg.suite == "inequalities") inequality_suite(st, Ts, reports);
  }
  apply_tolerance(cfg, reports);
  Sink sink(cfg, out);
  write_reports_csv(sink.stream(), reports);
  CheckSummary summary;
  summary.add(reports);
  log << "verify: states=" << states.size() << " checks run=" << summary.run
      << " passed=" << summary.passed << " failed=" << summary.failed
      << " worst_margin=" << format_double(summary.worst_margin) << '\n';
  return summary.ok() ? kOk : kViolation;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto states = load_states(cfg);
  const auto Ts = grid_or(cfg, GridRange{0.0, 1.0, 101});
  Sink sink(cfg, out);
  CsvWriter w(sink.stream());
  w.row({"state_id", "T", "purity", "H1", "H2", "C2", "mean_n"});
  std::size_t rows = 0;
  for (const NamedState& st : states) {
    const PurityPolynomial poly = purity_polynomial(st.rho);
    for (double T : Ts) {
      if (!(T >= 0.0 && T <= 1.0)) throw UsageError("sweep needs T in [0, 1]");
      const DensityOperator rt = apply_loss(st.rho, T);
      const double pur = poly.value(T);
      w.row({st.id, format_double(T), format_double(pur), format_double(von_neumann(rt)),
             format_double(-std::log(pur)), format_double(qcs_purity_rate(st.rho, T).c_squared),
             format_double(rt.mean_photon_number())});
      ++rows;
    }
  }
  log << "sweep: states=" << states.size() << " rows=" << rows << '\n';
  return kOk;
}

int cmd_phasespace(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto states = load_states(cfg);
  if (states.size() != 1) throw UsageError("phasespace takes exactly one state");
  if (!(cfg.T >= 0.0 && cfg.T <= 1.0)) throw UsageError("--T must lie in [0, 1]");
  if (cfg.points < 2) throw UsageError("--points must be at least 2");
  const double s = cfg.s_values.empty() ? 0.0 : cfg.s_values.front();
  const DensityOperator rt = apply_loss(states.front().rho, cfg.T);
  GridSpec spec = default_grid(rt, cfg.points);
  if (cfg.half_width > 0.0) spec.half_width = cfg.half_width;
  const QuasiProbGrid grid = quasi_prob_grid(rt, s, spec);
  Sink sink(cfg, out);
  write_grid_csv(sink.stream(), grid, cfg.T, states.front().id);
  log << "phasespace: points=" << grid.values.size() << " min=" << format_double(grid.min_value())
      << " normalization=" << format_double(grid.normalization) << '\n';
  return kOk;
}

int cmd_conjecture(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<ScanResult> scans;
  const std::string& name = cfg.name;
  const auto state_scans = [&](GridRange fallback,
                               const std::function<ScanResult(const NamedState&,
                                                              const std::vector<double>&)>& f) {
    const auto Ts = grid_or(cfg, fallback);
    for (const NamedState& st : load_states(cfg)) scans.push_back(f(st, Ts));
  };
  if (name == "log-convexity") {
    state_scans({0.0, 1.0, 101}, [](const NamedState& st, const std::vector<double>& Ts) {
      return log_convexity_scan(st.rho, Ts, st.id);
    });
  } else if (name == "convexity") {
    state_scans({0.0, 1.0, 101}, [](const NamedState& st, const std::vector<double>& Ts) {
      return convexity_scan(st.rho, Ts, st.id);
    });
  } else if (name == "ell-log-convexity") {
    state_scans({0.0, 0.49, 50}, [](const NamedState& st, const std::vector<double>& Ts) {
      return run_scan(
          "ell_log_convexity", st.id, Ts,
          [&](double T) {
            const CheckReport r = ell_log_convexity_check(st.rho, T);
            return MarginEval{r.margin, r.tolerance};
          },
          true);
    });
  } else if (name == "g2") {
    state_scans({0.0, 0.4, 5}, [](const NamedState& st, const std::vector<double>& Ts) {
      return run_scan("dark_port_g2", st.id, Ts,
                      [&](double T) { return dark_port_g2_margin(st.rho, T); });
    });
  } else if (name == "unfairness" || name == "lambda-zero") {
    const bool unfair = name == "unfairness";
    std::vector<std::pair<std::string, TwoModeOperator>> phis;
    PhiBasis basis;
    if (!cfg.phi.empty()) {
      // Named operators are written in the splitter's output ports.
      phis.emplace_back("phi:" + cfg.phi, named_phi(cfg.phi));
      basis = parse_basis(cfg.phi_basis,
                          unfair ? PhiBasis::output_ports : PhiBasis::input_modes);
    } else {
      // Fair operators rho x rho are interfered on the splitter first.
      for (const NamedState& st : load_states(cfg)) {
        phis.emplace_back(st.id, tensor(st.rho, st.rho));
      }
      basis = parse_basis(cfg.phi_basis, PhiBasis::input_modes);
    }
    const auto lambdas = unfair ? grid_or(cfg, GridRange{-1.0, 1.0, 41}) : std::vector<double>{0.0};
    for (const auto& [id, phi] : phis) {
      const auto eval = [&, &phi = phi](double l) {
        const CheckReport r = unfair ? unfairness_witness(phi, l, basis)
                                     : lambda_zero_witness(phi, basis);
        return MarginEval{r.margin, r.tolerance};
      };
      scans.push_back(run_scan(unfair ? "unfairness_witness" : "lambda_zero_witness", id,
                               lambdas, eval));
    }
  } else {
    throw UsageError("unknown conjecture '" + name +
                     "' (log-convexity, convexity, ell-log-convexity, unfairness, lambda-zero, g2)");
  }
  Sink sink(cfg, out);
  write_scan_csv(sink.stream(), scans);
  int violations = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const ScanResult& s : scans) {
    if (s.disposition == Disposition::violation) ++violations;
    worst = std::min(worst, s.min_margin);
  }
  const Disposition overall =
      violations > 0 ? Disposition::violation
                     : (scans.empty() ? Disposition::no_violation_found : scans.front().disposition);
  const std::size_t grid_size = scans.empty() ? 0 : scans.front().grid.size();
  log << "conjecture " << name << ": corpus=" << scans.size() << " grid_points=" << grid_size
      << " violations=" << violations << " min_margin=" << format_double(worst)
      << " disposition=" << disposition_name(overall) << '\n';
  return violations > 0 ? kViolation : kOk;
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Purity, entropy and nonclassicality of bosonic states under loss"};
  app.set_config("--config", "", "key=value file; flags given on the command line override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string grid_text;
  std::string quad_text;
  double tol = 0.0;
  app.add_option("--states,--state", cfg.states,
                 "state specs: fock:n[:c] coherent:re[:im] squeezed:r thermal:nbar "
                 "random:count[:c[:rank]] file:path")
      ->delimiter(',');
  app.add_option("--grid", grid_text, "T (or lambda) grid start:stop:steps");
  app.add_option("--s", cfg.s_values, "quasiprobability order(s)")->delimiter(',');
  app.add_option("--T", cfg.T, "transmission for phasespace");
  app.add_option("--out", cfg.out, "CSV output path (default stdout)");
  app.add_option("--seed", cfg.seed, "seed of the first random state");
  auto* tol_opt = app.add_option("--tol", tol, "override every check tolerance");
  app.add_flag("--allow-nonpositive", cfg.allow_nonpositive,
               "accept file operators with negative eigenvalues");
  app.add_option("--quadrature", quad_text, "radial:angular quadrature nodes");
  app.add_option("--suite", cfg.suite, "verify suite: purity qcs phase_space inequalities all");
  app.add_option("--name", cfg.name, "conjecture name");
  app.add_option("--phi", cfg.phi, "named two-mode operator: bell-like 01 10 11 vacuum");
  app.add_option("--phi-basis", cfg.phi_basis, "input or output");
  app.add_option("--points", cfg.points, "phasespace grid points per axis");
  app.add_option("--half-width", cfg.half_width, "phasespace grid half width");

  auto* verify = app.add_subcommand("verify", "run a check battery and write CheckReport CSV");
  auto* sweep = app.add_subcommand("sweep", "purity, entropies, QCS and mean photon number vs T");
  auto* phase = app.add_subcommand("phasespace", "export an s-ordered quasiprobability grid");
  auto* conj = app.add_subcommand("conjecture", "scan a conjecture over a corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!grid_text.empty()) cfg.grid = parse_grid(grid_text);
    if (!quad_text.empty()) parse_quadrature(quad_text, cfg);
    if (tol_opt->count() > 0) {
      if (!(tol >= 0.0)) throw UsageError("--tol must be nonnegative");
      cfg.tol = tol;
    }
    if (verify->parsed()) return cmd_verify(cfg, out, log);
    if (sweep->parsed()) return cmd_sweep(cfg, out, log);
    if (phase->parsed()) return cmd_phasespace(cfg, out, log);
    if (conj->parsed()) return cmd_conjecture(cfg, out, log);
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fockloss::cli
