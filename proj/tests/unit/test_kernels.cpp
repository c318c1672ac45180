#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "fockloss/kernels/kernels.hpp"

using namespace fockloss;
using namespace fockloss::kernels;

namespace {

std::vector<double> random_reals(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<std::complex<double>> random_complex(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double naive_dot(const std::vector<double>& x, const std::vector<double>& y) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<long double>(x[i]) * y[i];
  return static_cast<double>(acc);
}

}  // namespace

TEST_CASE("kernel variants agree with the scalar reference") {
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 100u, 1023u}) {
    CAPTURE(n);
    const auto x = random_reals(n, 1 + n);
    const auto y = random_reals(n, 1000 + n);
    const auto cx = random_complex(n, 2000 + n);
    const auto cy = random_complex(n, 3000 + n);
    const double ref = scalar::dot(x.data(), y.data(), n);
    CHECK(ref == doctest::Approx(naive_dot(x, y)).epsilon(1e-12));
    CHECK(dot(x, y) == doctest::Approx(ref).epsilon(1e-12));
    const auto cref = scalar::cdotc(cx.data(), cy.data(), n);
    const auto cd = cdotc(cx, cy);
    CHECK(std::abs(cd - cref) <= 1e-12 * (1.0 + std::abs(cref) + n));

    std::vector<double> y1 = y;
    std::vector<double> y2 = y;
    scalar::axpy(0.7, x.data(), y1.data(), n);
    axpy(0.7, x, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15));

    if (isa_available(Isa::avx2)) {
      CHECK(avx2::dot(x.data(), y.data(), n) == doctest::Approx(ref).epsilon(1e-12));
      const auto ca = avx2::cdotc(cx.data(), cy.data(), n);
      CHECK(std::abs(ca - cref) <= 1e-12 * (1.0 + std::abs(cref) + n));
      std::vector<double> y3 = y;
      avx2::axpy(0.7, x.data(), y3.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y3[i] == doctest::Approx(y1[i]).epsilon(1e-15));
    }
    if (isa_available(Isa::neon)) {
      CHECK(neon::dot(x.data(), y.data(), n) == doctest::Approx(ref).epsilon(1e-12));
      const auto cn = neon::cdotc(cx.data(), cy.data(), n);
      CHECK(std::abs(cn - cref) <= 1e-12 * (1.0 + std::abs(cref) + n));
    }
  }
}

TEST_CASE("kernel correlate_offsets matches the direct double loop") {
  for (std::size_t n : {1u, 2u, 5u, 9u, 33u, 121u}) {
    CAPTURE(n);
    const auto src = random_reals(n, 7 + n);
    const auto table = random_reals(2 * n - 1, 70 + n);
    std::vector<double> out(n);
    correlate_offsets(src, table, out);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += src[j] * table[i - j + n - 1];
      CHECK(out[i] == doctest::Approx(acc).epsilon(1e-12));
    }
  }
}

TEST_CASE("kernel dispatch honours the forced scalar path") {
  const char* env = std::getenv("FOCKLOSS_FORCE_SCALAR");
  if (env != nullptr && std::string(env) == "1") {
    CHECK(active_isa() == Isa::scalar);
  } else {
    CHECK(isa_available(active_isa()));
  }
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_name(Isa::avx2) == "avx2");
}
