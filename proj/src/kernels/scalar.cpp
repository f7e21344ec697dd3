#include "gflab/kernels.hpp"

namespace gflab::kernels {
namespace {

double sum_sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(cplx alpha, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void diff_scaled_scalar(const cplx* a, const cplx* b, double s, cplx* out,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * (a[i] - b[i]);
}

void add_scaled_scalar(const cplx* a, double s, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += s * a[i];
}

void matvec_batch_scalar(int d, const cplx* mats, const cplx* x, cplx* y,
                         std::size_t cells) {
  for (std::size_t c = 0; c < cells; ++c) {
    const cplx* m = mats + c * static_cast<std::size_t>(d) * d;
    const cplx* xc = x + c * static_cast<std::size_t>(d);
    cplx* yc = y + c * static_cast<std::size_t>(d);
    for (int i = 0; i < d; ++i) {
      cplx acc = 0.0;
      const cplx* row = m + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < d; ++j) acc += row[j] * xc[j];
      yc[i] = acc;
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{
      "scalar",         sum_sq_scalar,     dot_conj_scalar,
      axpy_scalar,      scale_scalar,      diff_scaled_scalar,
      add_scaled_scalar, matvec_batch_scalar,
  };
  return ops;
}

}  // namespace gflab::kernels
