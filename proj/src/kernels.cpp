#include "wh/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace wh::kernels {

namespace scalar {

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{cr * xr - ci * xi, cr * xi + ci * xr};
  }
}

double norm2(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

}  // namespace scalar

namespace {

struct Table {
  cplx (*cdot)(const cplx*, const cplx*, std::size_t);
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  double (*norm2)(const cplx*, std::size_t);
  Variant variant;
};

constexpr Table kScalarTable{scalar::cdot, scalar::axpy, scalar::norm2,
                             Variant::Scalar};
constexpr Table kAvx2Table{avx2::cdot, avx2::axpy, avx2::norm2, Variant::Avx2};

std::atomic<const Table*> g_table{nullptr};

const Table* table() {
  const Table* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    select_auto();
    t = g_table.load(std::memory_order_acquire);
  }
  return t;
}

}  // namespace

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  return table()->cdot(a, b, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  table()->axpy(alpha, x, y, n);
}

double norm2(const cplx* a, std::size_t n) { return table()->norm2(a, n); }

Variant active() { return table()->variant; }

std::string_view name(Variant v) {
  switch (v) {
    case Variant::Scalar: return "scalar";
    case Variant::Avx2: return "avx2";
  }
  return "?";
}

bool supported(Variant v) {
  return v == Variant::Scalar || (v == Variant::Avx2 && avx2::available());
}

void select(Variant v) {
  if (!supported(v))
    throw std::runtime_error("kernel variant not supported on this host: " +
                             std::string(name(v)));
  g_table.store(v == Variant::Avx2 ? &kAvx2Table : &kScalarTable,
                std::memory_order_release);
}

void select_auto() {
  g_table.store(avx2::available() ? &kAvx2Table : &kScalarTable,
                std::memory_order_release);
}

}  // namespace wh::kernels
