// Acceptance run: one line per criterion with its wall time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fockloss/conjectures.hpp"
#include "fockloss/inequalities.hpp"
#include "fockloss/loss.hpp"
#include "fockloss/phase_space.hpp"
#include "fockloss/purity.hpp"
#include "fockloss/qcs.hpp"

using namespace fockloss;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

struct Corpus {
  std::vector<PureState> pure;
  std::vector<DensityOperator> pure_rho;
  std::vector<DensityOperator> mixed;

  std::vector<const DensityOperator*> all() const {
    std::vector<const DensityOperator*> v;
    for (const auto& r : pure_rho) v.push_back(&r);
    for (const auto& r : mixed) v.push_back(&r);
    return v;
  }
};

// 200 pure and 200 mixed states, cutoffs cycling through 2..10.
Corpus make_corpus() {
  Corpus c;
  for (int i = 0; i < 200; ++i) {
    const int cut = 2 + i % 9;
    c.pure.push_back(random_pure(1000 + i, cut));
    c.pure_rho.push_back(c.pure.back().density());
    c.mixed.push_back(random_mixed(5000 + i, cut, std::min(cut, 2 + i % 3)));
  }
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(i == n - 1 ? b : a + (b - a) * i / (n - 1));
  return v;
}

std::string state_tag(std::size_t i) {
  return (i < 200 ? "pure#" : "mixed#") + std::to_string(i % 200);
}

int failures = 0;

void criterion(int n, const std::string& title, double budget_s,
               const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    std::ostringstream s;
    s << "runtime " << dt << " s over budget " << budget_s << " s";
    o.require(false, s.str());
  }
  if (!o.ok) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s) %s\n", o.ok ? "PASS" : "FAIL", n, title.c_str(), dt,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::function<double(Complex)> gaussian_q(double a) {
  return [a](Complex z) { return a / pi * std::exp(-a * std::norm(z)); };
}

}  // namespace

int main() {
  const Corpus corpus = make_corpus();
  const auto all = corpus.all();
  const std::vector<double> T11 = linspace(0.0, 1.0, 11);

  criterion(1, "single-photon loss at T=1/2", 1.0, [](Outcome& o) {
    const DensityOperator one = make_fock(1, 2).density();
    const DensityOperator half = apply_loss(one, 0.5);
    CMatrix want = CMatrix::Zero(2, 2);
    want(0, 0) = 0.5;
    want(1, 1) = 0.5;
    o.require(max_abs_diff(half.matrix(), want) <= 1e-10, "E_1/2[|1><1|] != diag(1/2,1/2)");
    o.require(std::abs(purity(half) - 0.5) <= 1e-10, "purity != 1/2");
    o.require(std::abs(von_neumann(half) - std::log(2.0)) <= 1e-10, "H1 != log 2");
    double pmin = 2, hmax = -1, t_pmin = -1, t_hmax = -1;
    for (double T : linspace(0.0, 1.0, 101)) {
      const DensityOperator r = apply_loss(one, T);
      const double p = purity(r), h = von_neumann(r);
      if (p < pmin) pmin = p, t_pmin = T;
      if (h > hmax) hmax = h, t_hmax = T;
    }
    o.require(std::abs(t_pmin - 0.5) < 1e-12, "purity minimum not at T=1/2");
    o.require(std::abs(t_hmax - 0.5) < 1e-12, "entropy maximum not at T=1/2");
    o.detail << "purity=" << purity(half) << " H1=" << von_neumann(half);
  });

  criterion(2, "pure-state purity symmetry and convexity on [-1,2]", 60.0, [](Outcome& o) {
    double worst_sym = 0, worst_rel = 0, worst_d2 = std::numeric_limits<double>::infinity();
    const auto grid = linspace(-1.0, 2.0, 301);
    for (int i = 0; i < 200; ++i) {
      const DensityOperator r = random_pure(20000 + i, 2 + i % 11).density();
      const PurityPolynomial P = purity_polynomial(r);
      for (double T : grid) {
        const double d = std::abs(P.value(T) - P.value(1 - T));
        // Outside [0, 1] P grows like |1-2T|^(2c-2); absolute agreement there is
        // limited by double rounding, so the extended range is judged relatively.
        if (T >= 0 && T <= 1) worst_sym = std::max(worst_sym, d);
        worst_rel = std::max(worst_rel, d / std::max(1.0, std::abs(P.value(T))));
        worst_d2 = std::min(worst_d2, P.derivative(T, 2));
      }
    }
    o.require(worst_sym <= 1e-10, "symmetry deviation on [0,1]");
    o.require(worst_rel <= 1e-10, "relative symmetry deviation on [-1,2]");
    o.require(worst_d2 >= -1e-9, "negative second derivative");
    o.detail << "states=200 max|P(T)-P(1-T)| on [0,1]=" << worst_sym
             << " max relative on [-1,2]=" << worst_rel << " min P''=" << worst_d2;
  });

  criterion(3, "dark-port coefficients", 120.0, [&](Outcome& o) {
    double min_p = std::numeric_limits<double>::infinity(), max_odd = 0;
    for (int i = 0; i < 200; ++i) {
      const DensityOperator& r = corpus.mixed[i];
      const DensityOperator s = random_mixed(9000 + i, r.cutoff(), 1 + i % 3);
      for (double v : dark_port_distribution(tensor(r, s))) min_p = std::min(min_p, v);
      for (double v : overlap_polynomial(r, s).p) min_p = std::min(min_p, v);
      for (double v : purity_polynomial(r).p) min_p = std::min(min_p, v);
      const std::vector<double> pp = purity_polynomial(corpus.pure_rho[i]).p;
      for (std::size_t m = 1; m < pp.size(); m += 2) max_odd = std::max(max_odd, std::abs(pp[m]));
      for (double v : pp) min_p = std::min(min_p, v);
    }
    o.require(min_p >= -1e-10, "negative coefficient");
    o.require(max_odd <= 1e-10, "odd coefficient of pure input");
    o.detail << "pairs=200 min p_m=" << min_p << " max|odd p_m|=" << max_odd;
  });

  criterion(4, "entropy and mutual-information concavity", 120.0, [&](Outcome& o) {
    double worst = -std::numeric_limits<double>::infinity();
    int bad = 0;
    const auto grid = linspace(0.05, 0.95, 19);
    for (int i = 0; i < 100; ++i) {
      const DensityOperator& r = i < 50 ? corpus.pure_rho[i] : corpus.mixed[i - 50];
      for (double T : grid) {
        for (const CheckReport& c :
             {entropy_concavity_check(r, T), mutual_information_concavity_check(r, T)}) {
          worst = std::max(worst, c.lhs);
          if (!c.pass) ++bad;
        }
      }
    }
    o.require(bad == 0 && worst <= 1e-7, "second difference above 1e-7");
    o.detail << "states=100 max second difference=" << worst;
  });

  criterion(5, "coherence scale routes and bounds", 120.0, [&](Outcome& o) {
    double route_dev = 0, kernel_dev = 0, half_dev = 0, mixed_max = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const DensityOperator& r = *all[i];
      const double c = qcs_commutator(r).c_squared;
      route_dev = std::max({route_dev, std::abs(qcs_two_copy(r).c_squared - c),
                            std::abs(qcs_purity_rate(r, 1.0).c_squared - c),
                            std::abs(qcs_lindblad(r, 1.0).c_squared - c)});
      const KernelQcs k = qcs_kernel_form(r, KernelGrid{9.0, 601});
      o.require(!k.accuracy_warning, "kernel accuracy warning for " + state_tag(i));
      kernel_dev = std::max(kernel_dev, std::abs(k.c_squared - c));
      if (i < 200) {
        half_dev = std::max(half_dev, std::abs(qcs_purity_rate(r, 0.5).c_squared - 1.0));
      } else {
        for (double T : linspace(0.0, 0.5, 11)) {
          mixed_max = std::max(mixed_max, qcs_purity_rate(r, T).c_squared);
        }
      }
    }
    o.require(route_dev <= 1e-8, "routes disagree");
    o.require(kernel_dev <= 1e-4, "kernel route disagrees");
    o.require(half_dev <= 1e-8, "pure C^2(1/2) != 1");
    o.require(mixed_max <= 1 + 1e-8, "mixed C^2 above 1 for T <= 1/2");
    o.detail << "states=400 route dev=" << route_dev << " kernel dev=" << kernel_dev
             << " |C2(1/2)-1|=" << half_dev << " max mixed C2=" << mixed_max;
  });

  criterion(6, "Wigner nonnegativity after half loss", 30.0, [](Outcome& o) {
    const DensityOperator one = make_fock(1, 2).density();
    const GridSpec spec{Complex(0, 0), 6.0, 201};
    double worst = std::numeric_limits<double>::infinity();
    for (double T : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      worst = std::min(worst, quasi_prob_grid(apply_loss(one, T), 0.0, spec).min_value());
    }
    const double T = 0.75;
    const DensityOperator r = apply_loss(one, T);
    const double w0 = quasi_prob_grid(r, 0.0, spec).at(100, 100);
    const double w_point = quasi_prob(r, Complex(0, 0), 0.0);
    o.require(worst >= -1e-9, "negative Wigner value for T <= 1/2");
    o.require(w0 <= -1e-3, "origin not negative at T=0.75");
    o.require(std::abs(w0 - 2 / pi * (1 - 2 * T)) <= 1e-10, "origin value");
    o.require(std::abs(w_point - w0) <= 1e-12, "grid and pointwise disagree");
    o.detail << "min W (T<=1/2)=" << worst << " W(0;T=0.75)=" << w0;
  });

  criterion(7, "phase-space purity routes", 60.0, [&](Outcome& o) {
    double dev = 0;
    for (int i = 0; i < 20; ++i) {
      const DensityOperator& r = i < 10 ? corpus.pure_rho[8 + i] : corpus.mixed[8 + i];
      const double p = purity(r);
      const double T = 0.6;
      const double pt = purity(apply_loss(r, T));
      for (double v : {purity_from_chi(r, 0.0), purity_from_chi(r, -0.5), overlap_from_quasi(r, r, 0.0) }) {
        dev = std::max(dev, std::abs(v - p));
      }
      dev = std::max({dev, std::abs(purity_lossy_from_chi(r, T, 0.0) - pt),
                      std::abs(laplace_purity(r, T) - pt), std::abs(laplace_purity(r, 1.0) - p)});
    }
    o.require(dev <= 1e-5, "route deviation above 1e-5");
    o.detail << "states=20 max deviation=" << dev;
  });

  criterion(8, "loss inequalities and second-derivative forms", 1e9, [&](Outcome& o) {
    int run = 0, bad = 0;
    double transpose_dev = 0;
    std::string first;
    const auto tally = [&](const CheckReport& c, std::size_t i) {
      ++run;
      if (!c.pass) {
        if (bad++ == 0) first = c.check_name + " " + state_tag(i) + " " + c.params;
      }
    };
    for (std::size_t i = 0; i < all.size(); ++i) {
      const DensityOperator& r = *all[i];
      const bool pure = i < 200;
      tally(cauchy_schwarz_ladder(r), i);
      for (double T : T11) {
        if (T <= 0.5) tally(corollary_loss_ladder(r, T), i);
        if (T > 0 && T < 1) tally(appendix_c_second_derivative(r, T), i);
        if (T > 0) tally(derivative_route_check(r, T), i);
        for (int k = 1; k <= 3; ++k) {
          if (pure || T <= 0.5) tally(corollary6_sign_check(r, T, k), i);
        }
        if (pure && T > 0 && T < 1) {
          const CheckReport t = transpose_trick_identity(corpus.pure[i], T);
          tally(t, i);
          transpose_dev = std::max(transpose_dev, std::abs(t.lhs - t.rhs));
        }
        if (pure && T > 0 && T <= 0.5) tally(corollary_pure_ratio(corpus.pure[i], T), i);
      }
      if (pure) tally(pure_second_order_inequality(corpus.pure[i]), i);
    }
    double sat = 0;
    for (Complex a : {Complex(1, 0), Complex(0.5, 0.7), Complex(-1.2, 0.3)}) {
      const CheckReport c = pure_second_order_inequality(make_coherent(a, 60));
      sat = std::max(sat, std::abs(c.lhs - c.rhs));
    }
    o.require(bad == 0, "violation: " + first);
    o.require(transpose_dev <= 1e-10, "transpose-trick deviation");
    o.require(sat <= 1e-10, "coherent equality case not saturated");
    o.detail << "checks=" << run << " violations=" << bad << " transpose dev=" << transpose_dev
             << " coherent gap=" << sat;
  });

  criterion(9, "complete monotonicity and number-purity monotonicity", 60.0, [&](Outcome& o) {
    int bad = 0;
    const auto grid = linspace(0.01, 1.0, 100);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!bernstein_check(*all[i], 4).pass) ++bad;
      if (!number_purity_monotonicity(*all[i], grid).pass) ++bad;
    }
    o.require(bad == 0, "violations");
    o.detail << "states=400 k<=4 violations=" << bad;
  });

  criterion(10, "Husimi-pair sign for Gaussian pairs", 60.0, [](Outcome& o) {
    const GridSpec spec{Complex(0, 0), 8.0, 161};
    const CheckReport dil = husimi_pair_check(gaussian_q(1.0), gaussian_q(0.5), 0.3, spec);
    o.require(dil.pass, "vacuum/dilated fails at T=0.3");
    double found = -1, value = 0;
    for (double T : linspace(0.05, 0.45, 9)) {
      const CheckReport c = husimi_pair_check(gaussian_q(1.0), gaussian_q(2.0), T, spec);
      if (!c.pass && c.lhs > 0) {
        found = T;
        value = c.lhs;
        break;
      }
    }
    o.require(found > 0, "no violation found for vacuum/compressed");
    o.detail << "dilated integral=" << dil.lhs << " compressed violation at T=" << found
             << " integral=" << value;
  });

  criterion(11, "counterexamples", 10.0, [](Outcome& o) {
    CVector bell = CVector::Zero(4);
    bell[0] = 1.0;
    bell[3] = -1.0;
    const TwoModeOperator phi(bell * bell.adjoint(), 2, 2);
    CVector v01 = CVector::Zero(4);
    v01[1] = 1.0;
    const TwoModeOperator p01(v01 * v01.adjoint(), 2, 2);
    const DensityOperator one = make_fock(1, 2).density();
    CMatrix sm = CMatrix::Zero(3, 3);
    sm(0, 0) = 2.0 / 3;
    sm(1, 1) = -1.0 / 3;
    sm(2, 2) = 2.0 / 3;
    const DensityOperator sigma(sm, DensityOperator::Kind::nonpositive);

    std::vector<double> first, second;
    for (int pass = 0; pass < 2; ++pass) {
      auto& out = pass == 0 ? first : second;
      for (double l : linspace(-1.0, 1.0, 41)) {
        for (const TwoModeOperator* p : {&phi, &p01}) {
          const CheckReport c = unfairness_witness(*p, l, PhiBasis::output_ports);
          out.push_back(c.lhs);
          out.push_back(c.rhs);
          if (pass == 0) o.require(c.lhs == 1.0 && c.rhs == 0.0 && !c.pass, "witness is not 1 <= 0");
        }
      }
      for (double T : {-0.5, 1.1, 1.2, 1.5}) out.push_back(log_convexity_margin(one, T).margin);
    }
    o.require(first.size() == second.size() &&
                  std::memcmp(first.data(), second.data(), first.size() * sizeof(double)) == 0,
              "repeat run not bit-identical");
    const ScanResult ext = log_convexity_scan(one, {-0.5, 1.1, 1.2, 1.5}, "fock:1");
    o.require(ext.disposition == Disposition::violation && ext.violations.size() == 4,
              "log-convexity of |1> does not fail outside [0,1]");
    o.require(log_convexity_scan(one, linspace(0, 1, 101)).disposition ==
                  Disposition::no_violation_found,
              "log-convexity of |1> fails inside [0,1]");
    const auto grid = linspace(0.0, 1.0, 101);
    o.require(convexity_scan(sigma, grid).disposition == Disposition::no_violation_found,
              "sigma fails convexity");
    o.require(log_convexity_scan(sigma, grid).disposition == Disposition::no_violation_found,
              "sigma fails log-convexity");
    o.detail << "witness 1<=0 on 41 lambdas x 2 operators; |1> min margin outside=" << ext.min_margin;
  });

  criterion(12, "conjecture scans", 300.0, [&](Outcome& o) {
    std::vector<ScanResult> scans;
    const auto grid = linspace(0.0, 1.0, 101);
    const auto lambdas = linspace(-1.0, 1.0, 41);
    const auto g2_grid = linspace(0.0, 0.4, 5);
    const auto ell_grid = linspace(0.0, 0.49, 50);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const DensityOperator& r = *all[i];
      const std::string id = state_tag(i);
      scans.push_back(log_convexity_scan(r, grid, id));
      const TwoModeOperator phi = tensor(r, r);
      scans.push_back(run_scan("unfairness_witness", id, lambdas, [&](double l) {
        const CheckReport c = unfairness_witness(phi, l, PhiBasis::input_modes);
        return MarginEval{c.margin, c.tolerance};
      }));
      scans.push_back(run_scan("dark_port_g2", id, g2_grid,
                               [&](double T) { return dark_port_g2_margin(r, T); }));
      scans.push_back(run_scan(
          "ell_log_convexity", id, ell_grid,
          [&](double T) {
            const CheckReport c = ell_log_convexity_check(r, T);
            return MarginEval{c.margin, c.tolerance};
          },
          true));
    }
    struct Family {
      int n = 0;
      int violating = 0;
      double min_margin = std::numeric_limits<double>::infinity();
      std::string argmin;
    };
    std::vector<std::pair<std::string, Family>> fam;
    for (const ScanResult& s : scans) {
      auto it = std::find_if(fam.begin(), fam.end(), [&](auto& f) { return f.first == s.name; });
      if (it == fam.end()) it = fam.insert(fam.end(), {s.name, Family{}});
      Family& f = it->second;
      ++f.n;
      if (s.disposition == Disposition::violation) ++f.violating;
      if (s.min_margin < f.min_margin) {
        f.min_margin = s.min_margin;
        std::ostringstream a;
        a << s.state_id << "@" << s.argmin;
        f.argmin = a.str();
      }
      if (s.name == "ell_log_convexity") {
        o.require(s.disposition == Disposition::proven_case_verified, "ell check failed");
      }
    }
    for (const auto& [name, f] : fam) {
      o.require(f.violating == 0, name + " reports a violation");
      o.detail << name << ": states=" << f.n << " min=" << f.min_margin << " at " << f.argmin << "; ";
    }
    std::ofstream csv("acceptance_scans.csv");
    write_scan_csv(csv, scans);
    o.detail << "margins in acceptance_scans.csv";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
