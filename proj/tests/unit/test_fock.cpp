#include <doctest.h>

#include <cmath>

#include "fockloss/error.hpp"
#include "fockloss/fock.hpp"
#include "fockloss/purity.hpp"

using namespace fockloss;

TEST_CASE("fock states and truncation") {
  const PureState v = make_fock(0, 4);
  CHECK(v[0] == Complex(1.0, 0.0));
  CHECK(std::abs(v[1]) == 0.0);
  CHECK(make_fock(1, 4)[1] == Complex(1.0, 0.0));
  CHECK_THROWS_AS(make_fock(3, 3), DomainError);
}

TEST_CASE("coherent states") {
  const PureState z = make_coherent(Complex(0, 0), 5);
  CHECK(std::abs(z[0] - 1.0) < 1e-15);
  const PureState c = make_coherent(Complex(1.0, 0.0), 25);
  double fact = 1.0;
  for (int n = 0; n < 25; ++n) {
    if (n > 0) fact *= n;
    CHECK(c[n].real() == doctest::Approx(std::exp(-0.5) / std::sqrt(fact)).epsilon(1e-12));
  }
  CHECK(std::abs(c.density().mean_photon_number() - 1.0) < 1e-10);
  CHECK(make_coherent(Complex(2.0, 0.0), 6).truncation_warning());
  CHECK_FALSE(c.truncation_warning());
}

TEST_CASE("squeezed vacuum") {
  const PureState s0 = make_squeezed_vacuum(0.0, 8);
  CHECK(std::abs(s0[0] - 1.0) < 1e-15);
  const PureState s = make_squeezed_vacuum(0.5, 30);
  CHECK(std::abs(s.density().mean_photon_number() - std::pow(std::sinh(0.5), 2)) < 1e-8);
  for (int n = 1; n < 30; n += 2) CHECK(std::abs(s[n]) == 0.0);
}

TEST_CASE("random states are deterministic and valid") {
  const PureState a = random_pure(42, 6);
  const PureState b = random_pure(42, 6);
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  CHECK(std::abs(purity(random_mixed(5, 6, 1)) - 1.0) < 1e-12);
  const DensityOperator m = random_mixed(5, 6, 3);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  CHECK(std::abs(m.matrix().trace() - 1.0) < 1e-12);
}

TEST_CASE("density operator validation") {
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{bad}, NonStateError);
  CHECK_NOTHROW(DensityOperator(bad, DensityOperator::Kind::nonpositive));
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityOperator{nonherm}, NonStateError);
}

TEST_CASE("displacement matrix") {
  CHECK((displacement_matrix(Complex(0, 0), 6) - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <
        1e-15);
  const Complex alpha(0.6, -0.3);
  const CMatrix d = displacement_matrix(alpha, 30);
  CHECK(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(alpha))) < 1e-14);
  // Unitarity holds on the low block, away from the truncation edge.
  const CMatrix prod = d * displacement_matrix(-alpha, 30);
  CHECK((prod.topLeftCorner(15, 15) - CMatrix::Identity(15, 15)).cwiseAbs().maxCoeff() < 1e-8);
  // D(alpha)|0> is the coherent state.
  const PureState c = make_coherent(alpha, 30);
  CHECK((d.col(0) - c.amplitudes()).head(20).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ladder algebra") {
  const ModeOperators ops = mode_operators(8);
  CHECK((ops.adag * ops.a - ops.n).cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 8; ++k) CHECK(ops.n(k, k).real() == k);
  const CMatrix lhs = ops.x * ops.x + ops.p * ops.p;
  const CMatrix rhs = 2.0 * ops.n + CMatrix::Identity(8, 8);
  CHECK((lhs - rhs).topLeftCorner(7, 7).cwiseAbs().maxCoeff() < 1e-12);
  const CMatrix comm = ops.a * ops.adag - ops.adag * ops.a;
  CHECK((comm - CMatrix::Identity(8, 8)).topLeftCorner(7, 7).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("beam splitter action") {
  // Oracle: dense matrix exponential of the generator on cutoff 3 per mode.
  const int c = 3;
  const double T = 0.3;
  const PureState one = make_fock(1, c);
  const PureState vac = make_fock(0, c);
  const TwoModeOperator in = tensor(one.density(), vac.density());
  const TwoModeOperator out = beam_splitter_apply(in, T);
  const RMatrix u = beam_splitter_unitary(transmission_angle(T), c, c);
  const CVector psi_in = [&] {
    CVector v = CVector::Zero(c * c);
    v[in.index(1, 0)] = 1.0;
    return v;
  }();
  const CVector psi_out = u.cast<Complex>() * psi_in;
  CHECK(std::abs(psi_out[in.index(1, 0)] - std::sqrt(T)) < 1e-12);
  CHECK(std::abs(psi_out[in.index(0, 1)] - std::sqrt(1 - T)) < 1e-12);
  CHECK(max_abs_diff(out.matrix, psi_out * psi_out.adjoint()) < 1e-12);

  // Independent oracle: Taylor series of exp(theta G) with G = a1 a2^dag - a1^dag a2.
  const ModeOperators ops = mode_operators(c);
  const CMatrix id = CMatrix::Identity(c, c);
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
  };
  const CMatrix g = kron(ops.a, ops.adag) - kron(ops.adag, ops.a);
  const double theta = std::acos(std::sqrt(T));
  CMatrix e = CMatrix::Identity(c * c, c * c);
  CMatrix term = e;
  for (int k = 1; k < 60; ++k) {
    term = term * g * (theta / k);
    e += term;
  }
  // Compare on the total-photon blocks that fit (N <= c - 1).
  for (int n1 = 0; n1 < c; ++n1)
    for (int n2 = 0; n1 + n2 < c; ++n2)
      for (int m1 = 0; m1 < c; ++m1)
        for (int m2 = 0; m1 + m2 < c; ++m2)
          CHECK(std::abs(e(in.index(n1, n2), in.index(m1, m2)) - u(in.index(n1, n2), in.index(m1, m2))) < 1e-12);
}

TEST_CASE("beam splitter preserves blocks and inverts") {
  const DensityOperator a = random_mixed(3, 4, 2);
  const DensityOperator b = random_mixed(4, 4, 3);
  const TwoModeOperator s = tensor(a, b);
  for (int i = 0; i <= 10; ++i) {
    const double T = 0.1 * i;
    const TwoModeOperator out = beam_splitter_apply(s, T);
    const TwoModeOperator back = beam_splitter_apply_angle(out, -transmission_angle(T));
    CHECK(max_abs_diff(back.matrix, s.matrix) < 1e-10);
    // Coupling between different total photon numbers stays exactly zero.
    const RMatrix u = beam_splitter_unitary(transmission_angle(T), 4, 4);
    for (int n1 = 0; n1 < 4; ++n1)
      for (int n2 = 0; n2 < 4; ++n2)
        for (int m1 = 0; m1 < 4; ++m1)
          for (int m2 = 0; m2 < 4; ++m2)
            if (n1 + n2 != m1 + m2) CHECK(u(s.index(n1, n2), s.index(m1, m2)) == 0.0);
    CHECK(std::abs(out.matrix.trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("tensor and partial trace") {
  const DensityOperator rho = random_mixed(8, 4, 2);
  const DensityOperator sigma = random_mixed(9, 3, 2);
  const TwoModeOperator s = tensor(rho, sigma);
  CHECK(max_abs_diff(partial_trace(s, Mode::first).matrix(), rho.matrix()) < 1e-15);
  CHECK(max_abs_diff(partial_trace(s, Mode::second).matrix(), sigma.matrix()) < 1e-15);
  CHECK(std::abs(partial_trace(s, Mode::first).matrix().trace() - 1.0) < 1e-12);

  const double T = 0.35;
  const TwoModeOperator w =
      beam_splitter_apply(tensor(make_fock(1, 2).density(), make_fock(0, 2).density()), T);
  const CMatrix r = partial_trace(w, Mode::first).matrix();
  CHECK(std::abs(r(0, 0) - (1 - T)) < 1e-12);
  CHECK(std::abs(r(1, 1) - T) < 1e-12);
  CHECK(std::abs(r(0, 1)) < 1e-12);
  CHECK_THROWS_AS(TwoModeOperator(CMatrix::Zero(5, 5), 2, 2), DimensionError);
}
