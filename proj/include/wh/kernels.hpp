#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace wh::kernels {

using cplx = std::complex<double>;

// Inner-loop primitives used by the grid reductions and accumulations.
// Scalar reference implementations are always available; an AVX2 variant is
// selected at runtime on capable x86-64 hosts. Both variants use a fixed
// summation order, so results are reproducible run to run; scalar and AVX2
// agree to ~1e-15 relative (lane-wise accumulation reorders rounding).

/// sum_i a_i * conj(b_i)
cplx cdot(const cplx* a, const cplx* b, std::size_t n);

/// y_i += alpha * x_i
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

/// sum_i |a_i|^2
double norm2(const cplx* a, std::size_t n);

enum class Variant { Scalar, Avx2 };

Variant active();
std::string_view name(Variant v);
bool supported(Variant v);

/// Pins the kernel variant. Throws std::runtime_error if unsupported here.
void select(Variant v);

/// Picks the best supported variant.
void select_auto();

namespace scalar {
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
}  // namespace scalar

namespace avx2 {
/// False when the binary or the host lacks AVX2+FMA; the entry points below
/// then fall back to the scalar reference.
bool available();
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
double norm2(const cplx* a, std::size_t n);
}  // namespace avx2

}  // namespace wh::kernels
