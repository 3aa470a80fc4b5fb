// AVX2+FMA variants of the inner-loop primitives. This translation unit is
// the only one built with -mavx2 -mfma; on other targets (or builds without
// those flags) the entry points forward to the scalar reference and
// available() reports false.

#include "wh/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

namespace wh::kernels::avx2 {

#if defined(__AVX2__) && defined(__FMA__)

bool available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    re0 = _mm256_fmadd_pd(va0, vb0, re0);
    re1 = _mm256_fmadd_pd(va1, vb1, re1);
    im0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0x5), im0);
    im1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0x5), im1);
  }
  __m256d re = _mm256_add_pd(re0, re1);
  // im lanes hold [ar*bi, ai*br, ...]; the imaginary part is odd - even.
  __m256d im = _mm256_addsub_pd(_mm256_setzero_pd(), _mm256_add_pd(im0, im1));
  double rr = hsum(re);
  double ri = hsum(im);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    rr += ar * br + ai * bi;
    ri += ai * br - ar * bi;
  }
  return {rr, ri};
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d vcr = _mm256_set1_pd(alpha.real());
  const __m256d vci = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t = _mm256_mul_pd(vci, _mm256_permute_pd(vx, 0x5));
    vy = _mm256_add_pd(vy, _mm256_fmaddsub_pd(vcr, vx, t));
    _mm256_storeu_pd(py + 2 * i, vy);
  }
  const double cr = alpha.real(), ci = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx{cr * xr - ci * xi, cr * xi + ci * xr};
  }
}

double norm2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

#else  // no AVX2 at build time

bool available() { return false; }

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  return scalar::cdot(a, b, n);
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}

double norm2(const cplx* a, std::size_t n) { return scalar::norm2(a, n); }

#endif

}  // namespace wh::kernels::avx2
