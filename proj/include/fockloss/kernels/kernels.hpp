#pragma once
// Data-parallel inner loops used by the phase-space and trace code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The dispatched
// entry points pick the best variant once, at first use, from a runtime CPU
// check. Setting FOCKLOSS_FORCE_SCALAR=1 in the environment pins the scalar
// path. The variants only differ in summation order.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace fockloss::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// ISA chosen by the dispatcher for this process.
Isa active_isa();

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

// --- dispatched entry points ----------------------------------------------

/// Sum_i x[i] * y[i]. Sizes must match.
double dot(std::span<const double> x, std::span<const double> y);

/// Sum_i conj(x[i]) * y[i]. For column-major Hermitian A this is Tr[A B].
std::complex<double> cdotc(std::span<const std::complex<double>> x,
                           std::span<const std::complex<double>> y);

/// y[i] += a * x[i].
void axpy(double a, std::span<const double> x, std::span<double> y);

/// out[i] = Sum_j src[j] * table[i - j + n - 1] for i, j in [0, n), where
/// n = src.size(), table.size() == 2n - 1 and out.size() == n. A discrete
/// 1D correlation with a kernel sampled on all lattice offsets.
void correlate_offsets(std::span<const double> src, std::span<const double> table,
                       std::span<double> out);

// --- explicit variants, exposed for equivalence testing -------------------

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace avx2

namespace neon {
double dot(const double* x, const double* y, std::size_t n);
std::complex<double> cdotc(const std::complex<double>* x, const std::complex<double>* y,
                           std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
}  // namespace neon

}  // namespace fockloss::kernels
