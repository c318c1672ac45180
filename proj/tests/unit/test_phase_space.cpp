#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fockloss/error.hpp"
#include "fockloss/loss.hpp"
#include "fockloss/phase_space.hpp"
#include "fockloss/purity.hpp"

using namespace fockloss;
using std::numbers::pi;

TEST_CASE("characteristic function") {
  const DensityOperator vac = make_fock(0, 20).density();
  const DensityOperator one = make_fock(1, 20).density();
  for (Complex a : {Complex(0.3, 0.1), Complex(-1.0, 0.5), Complex(0.0, 2.0)}) {
    CHECK(std::abs(char_fn(vac, a, 1.0) - 1.0) < 1e-12);
    const double x = std::norm(a);
    CHECK(std::abs(char_fn(one, a, 0.0) - (1 - x) * std::exp(-0.5 * x)) < 1e-12);
  }
  const DensityOperator r = random_mixed(3, 6, 2);
  for (double s : {-1.0, 0.0, 0.5, 1.0}) CHECK(std::abs(char_fn(r, 0.0, s) - 1.0) < 1e-12);
  for (double s : {-1.0, 0.0, 1.0}) {
    for (Complex a : {Complex(0.4, 0.2), Complex(1.0, -1.0), Complex(-2.0, 0.3)}) {
      CHECK(std::norm(char_fn(r.padded(40), a, s)) * std::exp(-s * std::norm(a)) <= 1 + 1e-9);
    }
  }
}

TEST_CASE("quasiprobability values") {
  for (double T : {0.2, 0.5, 0.75, 1.0}) {
    const DensityOperator rt = apply_loss(make_fock(1, 2).density(), T);
    CHECK(std::abs(quasi_prob(rt, 0.0, 0.0) - 2 / pi * (1 - 2 * T)) < 1e-14);
  }
  CHECK(std::abs(quasi_prob(make_fock(0, 2).density(), 0.0, -1.0) - 1 / pi) < 1e-15);
  CHECK_THROWS_AS(quasi_prob(make_fock(0, 2).density(), 0.0, 1.0), DomainError);

  const DensityOperator r = random_mixed(12, 6, 3);
  for (Complex a : {Complex(0.3, -0.7), Complex(1.5, 0.2)}) {
    CHECK(std::abs(quasi_prob(r, a, 0.0) - wigner_parity(r, a)) < 1e-10);
    const CVector c = make_coherent(a, 40).amplitudes();
    const double husimi = (c.head(6).adjoint() * r.matrix() * c.head(6)).value().real() / pi;
    CHECK(std::abs(quasi_prob(r, a, -1.0) - husimi) < 1e-10);
    for (double s : {-1.0, -0.3, 0.0, 0.4}) {
      CHECK(std::abs(quasi_prob(r, a, s) - quasi_prob_fourier(r, a, s)) < 1e-8);
    }
  }
}

TEST_CASE("quasiprobability grids") {
  const DensityOperator r = random_mixed(13, 5, 2);
  for (double s : {-1.0, 0.0}) {
    const QuasiProbGrid g = quasi_prob_grid(r, s, GridSpec{Complex(0, 0), 6.0, 121});
    CHECK(std::abs(g.normalization - 1.0) < 1e-6);
    if (s <= -1.0) CHECK(g.min_value() >= -1e-9);
  }
  std::ostringstream os;
  write_grid_csv(os, quasi_prob_grid(make_fock(0, 2).density(), 0.0, GridSpec{Complex(0, 0), 1.0, 3}), 0.5, "fock:0");
  const std::string text = os.str();
  CHECK(text.rfind("# s=0,T=0.5,state=fock:0\nre_alpha,im_alpha,value\n-1,-1,", 0) == 0);
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 11);
}

TEST_CASE("Wigner of lossy single photon") {
  for (int i = 1; i <= 5; ++i) {
    const double T = 0.1 * i;
    const DensityOperator rt = apply_loss(make_fock(1, 2).density(), T);
    CHECK(quasi_prob_grid(rt, 0.0, GridSpec{Complex(0, 0), 6.0, 61}).min_value() >= -1e-9);
  }
  CHECK(quasi_prob(apply_loss(make_fock(1, 2).density(), 0.75), 0.0, 0.0) < -1e-3);
}

TEST_CASE("loss identities in phase space") {
  const CheckReport a = loss_identity_quasi(make_fock(1, 2).density(), 0.5, Complex(0.3, 0.0), 0.0);
  CHECK(a.pass);
  CHECK(std::abs(a.lhs - a.rhs) < 1e-9);
  for (double T : {0.3, 0.8}) CHECK(loss_identity_quasi(make_fock(0, 2).density(), T, Complex(0.5, 0.5), -1.0).pass);
  const DensityOperator r = random_mixed(14, 5, 3);
  for (double re = -1.0; re <= 1.0; re += 0.5)
    for (double im = -1.0; im <= 1.0; im += 0.5) CHECK(loss_identity_quasi(r, 0.7, Complex(re, im), -1.0).pass);
  CHECK(loss_identity_chi(make_fock(0, 2).density(), 0.5, Complex(0.4, 0.1), 1.0).pass);
  const CheckReport c = loss_identity_chi(make_fock(1, 2).density(), 0.5, Complex(0.4, 0.0), 0.0);
  CHECK(std::abs(c.margin) < 1e-10);
  CHECK(loss_identity_chi(make_coherent(Complex(1.0, 0.0), 30).density(), 0.36, Complex(0.2, 0.0), 1.0).pass);
}

TEST_CASE("convolution shifts the order") {
  const GridSpec spec{Complex(0, 0), 7.0, 141};
  const QuasiProbGrid w0 = quasi_prob_grid(make_fock(0, 2).density(), 0.0, spec);
  const QuasiProbGrid q0 = convolve_quasi(w0, -1.0);
  const QuasiProbGrid w1 = quasi_prob_grid(make_fock(1, 2).density(), 0.0, spec);
  const QuasiProbGrid q1 = convolve_quasi(w1, -1.0);
  CHECK(q0.s == -1.0);
  double dev0 = 0.0;
  double dev1 = 0.0;
  for (int i = 30; i < 111; ++i) {
    for (int j = 30; j < 111; ++j) {
      const Complex a = spec.point(i, j);
      const double x = std::norm(a);
      dev0 = std::max(dev0, std::abs(q0.at(i, j) - std::exp(-x) / pi));
      dev1 = std::max(dev1, std::abs(q1.at(i, j) - x * std::exp(-x) / pi));
    }
  }
  CHECK(dev0 < 1e-6);
  CHECK(dev1 < 1e-5);
  // Thermal state: s = 1 is the Gaussian P-function.
  const double nbar = 0.8;
  const QuasiProbGrid p = sample_grid([&](Complex a) { return std::exp(-std::norm(a) / nbar) / (pi * nbar); }, 1.0, spec);
  const QuasiProbGrid q = convolve_quasi(p, -2.0);
  double dev = 0.0;
  for (int i = 30; i < 111; ++i)
    for (int j = 30; j < 111; ++j) {
      const double x = std::norm(spec.point(i, j));
      dev = std::max(dev, std::abs(q.at(i, j) - std::exp(-x / (nbar + 1)) / (pi * (nbar + 1))));
    }
  CHECK(dev < 1e-5);
  CHECK_THROWS_AS(convolve_quasi(w0, 0.5), DomainError);
}

TEST_CASE("overlaps and purities from phase space") {
  const DensityOperator vac = make_fock(0, 3).density();
  const DensityOperator one = make_fock(1, 3).density();
  CHECK(std::abs(overlap_from_quasi(vac, vac, 0.0) - 1.0) < 1e-8);
  CHECK(std::abs(overlap_from_quasi(one, one, 0.0) - 1.0) < 1e-5);
  CHECK(std::abs(overlap_from_quasi(vac, one, 0.0)) < 1e-6);
  CHECK(std::abs(purity_from_chi(vac, 1.0) - 1.0) < 1e-10);
  CHECK(std::abs(purity_from_chi(apply_loss(one, 0.5), 1.0) - 0.5) < 1e-6);
  CHECK(std::abs(purity_from_chi(make_fock(2, 3).density(), 0.0) - 1.0) < 1e-6);
  CHECK(std::abs(purity_lossy_from_chi(vac, 0.3, 1.0) - 1.0) < 1e-6);
  CHECK(std::abs(purity_lossy_from_chi(one, 0.3, 1.0) - 0.58) < 1e-6);
  CHECK(std::abs(purity_lossy_from_chi(make_fock(2, 3).density(), 0.5, 1.0) - 0.375) < 1e-6);
  CHECK(std::abs(phase_averaged_chi_sq(vac, 1.7) - 1.0) < 1e-12);
  CHECK(std::abs(laplace_purity(vac, 0.4) - 1.0) < 1e-6);
  CHECK(std::abs(laplace_purity(one, 1.0) - 1.0) < 1e-6);
  CHECK(std::abs(laplace_purity(one, 0.25) - 0.625) < 1e-6);
  for (double tau : {0.0, 0.5, 3.0}) CHECK(phase_averaged_chi_sq(random_mixed(3, 5, 2), tau) >= -1e-12);
  CHECK_THROWS_AS(overlap_from_quasi(vac, vac, 1.0), DomainError);
}
