#include "gflab/evolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gflab/kernels.hpp"

namespace gflab {

double laplacian_eigenvalue(const GridSpec& g, std::span<const int> mode) {
  if (mode.size() != static_cast<std::size_t>(g.dim()))
    throw std::invalid_argument("mode arity mismatch");
  double s = 0.0;
  for (int k = 0; k < g.dim(); ++k) {
    const double x = std::sin(std::numbers::pi * mode[k] / g.sizes()[k]);
    s += x * x;
  }
  const double h = g.spacing();
  return -4.0 / (h * h) * s;
}

namespace {

// In-place naive DFT along one axis of cell-major data with `d` complex
// entries per cell. sign -1: analysis, +1: synthesis (unnormalized).
void dft_axis(const GridSpec& g, int d, int axis, int sign, cplx* data) {
  const std::size_t nk = static_cast<std::size_t>(g.sizes()[axis]);
  const std::size_t stride = g.stride(axis) * static_cast<std::size_t>(d);
  const std::size_t block = nk * stride;
  const std::size_t outer = g.cells() * static_cast<std::size_t>(d) / block;

  std::vector<cplx> twiddle(nk);
  for (std::size_t m = 0; m < nk; ++m) {
    const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(m) /
                       static_cast<double>(nk);
    twiddle[m] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<cplx> in(nk), out(nk);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * block;
    // `stride` consecutive entries share the same line phase structure;
    // walk each interleaved line separately
    for (std::size_t off = 0; off < stride; ++off) {
      cplx* line = data + base + off;
      for (std::size_t j = 0; j < nk; ++j) in[j] = line[j * stride];
      for (std::size_t m = 0; m < nk; ++m) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < nk; ++j) acc += twiddle[(m * j) % nk] * in[j];
        out[m] = acc;
      }
      for (std::size_t m = 0; m < nk; ++m) line[m * stride] = out[m];
    }
  }
}

// f -> inverse_dft( multiplier(lambda_m) * dft(f) )
template <class Mult>
Field evolve_spectral(const Field& f, Mult&& multiplier) {
  Field out = f;
  const GridSpec& g = f.grid();
  const int d = f.fiber_dim();
  for (int k = 0; k < g.dim(); ++k) dft_axis(g, d, k, -1, out.data());

  for (std::size_t c = 0; c < g.cells(); ++c) {
    const std::vector<int> mode = g.coords(c);
    const cplx m = multiplier(laplacian_eigenvalue(g, mode));
    kernels::active().scale(m, out.data() + c * static_cast<std::size_t>(d),
                            static_cast<std::size_t>(d));
  }

  for (int k = 0; k < g.dim(); ++k) dft_axis(g, d, k, +1, out.data());
  kernels::active().scale(1.0 / static_cast<double>(g.cells()), out.data(),
                          out.size());
  return out;
}

}  // namespace

Field evolve_heat(const Field& f, double t) {
  if (t < 0.0 || !std::isfinite(t))
    throw std::invalid_argument(
        "heat evolution: t must be >= 0 (the semigroup is not reversible)");
  if (t == 0.0) return f;
  return evolve_spectral(f, [t](double lambda) { return cplx(std::exp(t * lambda)); });
}

Field evolve_schrodinger(const Field& f, double t, int sign) {
  if (!std::isfinite(t)) throw std::invalid_argument("schrodinger evolution: t not finite");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("schrodinger evolution: sign must be +1 or -1");
  if (t == 0.0) return f;
  return evolve_spectral(f, [t, sign](double lambda) {
    return std::polar(1.0, sign * t * lambda);
  });
}

Field apply_projection_field(const ProjectionField& p, const Field& f) {
  if (!(p.grid() == f.grid()) || p.fiber_dim() != f.fiber_dim())
    throw std::invalid_argument("grid mismatch");
  Field out(f.grid(), f.fiber_dim());
  kernels::active().matvec_batch(f.fiber_dim(), p.data(), f.data(), out.data(),
                                 f.grid().cells());
  return out;
}

Field apply_exp_group(const ProjectionField& p, double s, const Field& f) {
  const Field pf = apply_projection_field(p, f);
  Field out = f;
  const cplx w = std::polar(1.0, s) - 1.0;
  kernels::active().axpy(w, pf.data(), out.data(), out.size());
  return out;
}

std::vector<double> leakage(const ProjectionField& p, const Field& f,
                            std::span<const double> times) {
  const Field pf = apply_projection_field(p, f);
  const double base = pf.norm();
  if (!(base > 1e-14 * (1.0 + f.norm())))
    throw std::invalid_argument("initial state annihilated by projection");

  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    const Field evolved = evolve_heat(pf, t);
    Field rem = evolved;
    rem -= apply_projection_field(p, evolved);
    out.push_back(rem.norm() / base);
  }
  return out;
}

}  // namespace gflab
