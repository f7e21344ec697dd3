// AVX2 variants of the array kernels. Complex values stay interleaved in
// registers: one __m256d holds two complex numbers. Only compiled on x86_64
// and only entered after the dispatcher checked cpu support.

#ifdef GFLAB_HAVE_AVX2

#include <immintrin.h>

#include "gflab/kernels.hpp"

namespace gflab::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

// sign mask that negates the imaginary (odd) lanes
inline __m256d neg_odd() { return _mm256_setr_pd(0.0, -0.0, 0.0, -0.0); }

double sum_sq_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double r = hsum(acc);
  for (; i < n; ++i) r += x[i] * x[i];
  return r;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sign = neg_odd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    // re: ar*br + ai*bi   im: ai*br - ar*bi
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    __m256d va_swap = _mm256_permute_pd(va, 0x5);
    __m256d vb_neg = _mm256_xor_pd(vb, sign);
    acc_im = _mm256_fmadd_pd(va_swap, vb_neg, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim);
    // lanes: [xr*ar - xi*ai, xi*ar + xr*ai] = alpha * x
    __m256d prod = _mm256_fmaddsub_pd(vx, are, t);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(cplx alpha, cplx* x, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim);
    _mm256_storeu_pd(px + 2 * i, _mm256_fmaddsub_pd(vx, are, t));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void diff_scaled_avx2(const cplx* a, const cplx* b, double s, cplx* out,
                      std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(_mm256_sub_pd(va, vb), vs));
  }
  for (; i < n; ++i) out[i] = s * (a[i] - b[i]);
}

void add_scaled_avx2(const cplx* a, double s, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  double* po = reinterpret_cast<double*>(out);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vo = _mm256_loadu_pd(po + 2 * i);
    _mm256_storeu_pd(po + 2 * i, _mm256_fmadd_pd(va, vs, vo));
  }
  for (; i < n; ++i) out[i] += s * a[i];
}

void matvec_batch_avx2(int d, const cplx* mats, const cplx* x, cplx* y,
                       std::size_t cells) {
  const __m256d sign = neg_odd();
  for (std::size_t c = 0; c < cells; ++c) {
    const cplx* m = mats + c * static_cast<std::size_t>(d) * d;
    const cplx* xc = x + c * static_cast<std::size_t>(d);
    cplx* yc = y + c * static_cast<std::size_t>(d);
    const double* px = reinterpret_cast<const double*>(xc);
    for (int i = 0; i < d; ++i) {
      const cplx* row = m + static_cast<std::size_t>(i) * d;
      const double* pr = reinterpret_cast<const double*>(row);
      __m256d acc_re = _mm256_setzero_pd();
      __m256d acc_im = _mm256_setzero_pd();
      int j = 0;
      for (; j + 2 <= d; j += 2) {
        __m256d vm = _mm256_loadu_pd(pr + 2 * j);
        __m256d vx = _mm256_loadu_pd(px + 2 * j);
        // re: mr*xr - mi*xi   im: mi*xr + mr*xi  (no conjugation)
        acc_re = _mm256_fmadd_pd(vm, _mm256_xor_pd(vx, sign), acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_permute_pd(vm, 0x5), vx, acc_im);
      }
      double re = hsum(acc_re);
      double im = hsum(acc_im);
      for (; j < d; ++j) {
        re += row[j].real() * xc[j].real() - row[j].imag() * xc[j].imag();
        im += row[j].imag() * xc[j].real() + row[j].real() * xc[j].imag();
      }
      yc[i] = {re, im};
    }
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{
      "avx2",          sum_sq_avx2,     dot_conj_avx2,
      axpy_avx2,       scale_avx2,      diff_scaled_avx2,
      add_scaled_avx2, matvec_batch_avx2,
  };
  return ops;
}

}  // namespace gflab::kernels

#endif  // GFLAB_HAVE_AVX2
