#pragma once

#include <cstddef>

#include "gflab/types.hpp"

namespace gflab::kernels {

// Hot array loops behind a runtime-dispatched function table. The scalar
// backend is the reference semantics; vectorized backends may reassociate
// sums and are held to 1e-13 relative agreement by the equivalence tests.
//
// Complex arrays are interleaved (re, im) doubles, matching
// std::complex<double> layout.
struct Ops {
  const char* name;

  // sum of squares of n doubles
  double (*sum_sq)(const double* x, std::size_t n);
  // sum of a[i] * conj(b[i])
  cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(cplx alpha, cplx* x, std::size_t n);
  // out[i] = s * (a[i] - b[i])
  void (*diff_scaled)(const cplx* a, const cplx* b, double s, cplx* out,
                      std::size_t n);
  // out[i] += s * a[i]
  void (*add_scaled)(const cplx* a, double s, cplx* out, std::size_t n);
  // y_c = M_c x_c for `cells` independent d x d blocks (row-major mats)
  void (*matvec_batch)(int d, const cplx* mats, const cplx* x, cplx* y,
                       std::size_t cells);
};

enum class Backend { Auto, Scalar, Avx2 };

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // only valid when avx2_available()

// Active table. Resolved once on first use: GFLAB_SIMD=scalar|avx2|auto,
// default auto (best supported backend).
const Ops& active();

// Overrides the active table (tests, CLI echo). Backend::Auto re-resolves.
void select(Backend b);

}  // namespace gflab::kernels
