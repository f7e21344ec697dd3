#include <atomic>
#include <cstdlib>
#include <cstring>

#include "gflab/kernels.hpp"

namespace gflab::kernels {

bool avx2_available() {
#ifdef GFLAB_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

#ifndef GFLAB_HAVE_AVX2
const Ops& avx2_ops() { return scalar_ops(); }
#endif

namespace {

const Ops* resolve_auto() {
  if (const char* env = std::getenv("GFLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_ops();
    // anything else (including "auto") falls through to detection
  }
  return avx2_available() ? &avx2_ops() : &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = resolve_auto();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void select(Backend b) {
  switch (b) {
    case Backend::Scalar:
      g_active.store(&scalar_ops(), std::memory_order_release);
      break;
    case Backend::Avx2:
      g_active.store(avx2_available() ? &avx2_ops() : &scalar_ops(),
                     std::memory_order_release);
      break;
    case Backend::Auto:
      g_active.store(resolve_auto(), std::memory_order_release);
      break;
  }
}

}  // namespace gflab::kernels
