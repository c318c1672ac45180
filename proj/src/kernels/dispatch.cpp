#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockloss/kernels/kernels.hpp"

namespace fockloss::kernels {

// Variants that were not compiled for this target forward to the scalar
// reference so the explicit entry points always link. isa_available() reports
// them as unavailable.
#ifndef FOCKLOSS_HAVE_AVX2
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n) {
  return scalar::cdotc(x, y, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
}  // namespace avx2
#endif

#ifndef FOCKLOSS_HAVE_NEON
namespace neon {
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n) {
  return scalar::cdotc(x, y, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
}  // namespace neon
#endif

namespace {

struct Table {
  Isa isa;
  double (*dot)(const double*, const double*, std::size_t);
  std::complex<double> (*cdotc)(const std::complex<double>*, const std::complex<double>*,
                                std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

bool cpu_has_avx2() {
#if defined(FOCKLOSS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool forced_scalar() {
  const char* env = std::getenv("FOCKLOSS_FORCE_SCALAR");
  return env != nullptr && std::string(env) != "0" && std::string(env) != "";
}

Table select() {
  if (!forced_scalar()) {
    if (isa_available(Isa::avx2)) return {Isa::avx2, &avx2::dot, &avx2::cdotc, &avx2::axpy};
    if (isa_available(Isa::neon)) return {Isa::neon, &neon::dot, &neon::cdotc, &neon::axpy};
  }
  return {Isa::scalar, &scalar::dot, &scalar::cdotc, &scalar::axpy};
}

const Table& table() {
  static const Table t = select();
  return t;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
    case Isa::neon:
#ifdef FOCKLOSS_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return table().isa; }

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size());
  return table().dot(x.data(), y.data(), x.size());
}

std::complex<double> cdotc(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y) {
  require_same_size(x.size(), y.size());
  return table().cdotc(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size());
  table().axpy(a, x.data(), y.data(), x.size());
}

void correlate_offsets(std::span<const double> src, std::span<const double> table_in,
                       std::span<double> out) {
  const std::size_t n = src.size();
  require_same_size(out.size(), n);
  if (n == 0) return;
  require_same_size(table_in.size(), 2 * n - 1);
  // out[i] = sum_j src[j] * table[i - j + n - 1]; with the table reversed the
  // offsets for fixed i run forward in j, which turns each output into a dot.
  std::vector<double> reversed(table_in.rbegin(), table_in.rend());
  const auto& t = table();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = t.dot(src.data(), reversed.data() + (n - 1 - i), n);
  }
}

}  // namespace fockloss::kernels
