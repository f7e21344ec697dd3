#include "gflab/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gflab/rng.hpp"

namespace gflab::presets {

namespace {

FiberOperator corner_ones(int d, int rank) {
  FiberOperator p(d);
  for (int i = 0; i < rank; ++i) p(i, i) = 1.0;
  return p;
}

}  // namespace

ProjectionField constant_field(const GridSpec& grid, int fiber_dim, int rank) {
  if (rank < 0 || rank > fiber_dim)
    throw std::invalid_argument("constant preset: rank out of range");
  return ProjectionField::constant(grid, Projection(corner_ones(fiber_dim, rank)));
}

ProjectionField step_field(const GridSpec& grid, int fiber_dim) {
  if (fiber_dim < 2)
    throw std::invalid_argument("step preset: fiber dimension must be >= 2");
  FiberOperator left(fiber_dim), right(fiber_dim);
  left(0, 0) = 1.0;
  right(1, 1) = 1.0;
  const int half = grid.sizes()[0] / 2;
  return ProjectionField::generate(grid, fiber_dim, [&](std::size_t cell) {
    return grid.coords(cell)[0] < half ? left : right;
  });
}

ProjectionField rotating_field(const GridSpec& grid, int fiber_dim) {
  if (fiber_dim < 2)
    throw std::invalid_argument("rotating preset: fiber dimension must be >= 2");
  const int n0 = grid.sizes()[0];
  return ProjectionField::generate(grid, fiber_dim, [&](std::size_t cell) {
    const double theta = 2.0 * std::numbers::pi * grid.coords(cell)[0] / n0;
    const double c = std::cos(theta), s = std::sin(theta);
    FiberOperator p(fiber_dim);
    p(0, 0) = c * c;
    p(0, 1) = c * s;
    p(1, 0) = s * c;
    p(1, 1) = s * s;
    return p;
  });
}

ProjectionField smooth_random_field(const GridSpec& grid, int fiber_dim,
                                    std::uint64_t seed, int rank,
                                    double amplitude) {
  if (rank < 1 || rank >= fiber_dim)
    throw std::invalid_argument("smooth preset: rank must be in [1, d-1]");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw std::invalid_argument("smooth preset: bad amplitude");

  // one cosine and one sine coefficient matrix per axis, Hermitian
  Rng rng(Rng::derive(seed, "smooth-field"));
  auto random_hermitian = [&]() {
    FiberOperator h(fiber_dim);
    for (int i = 0; i < fiber_dim; ++i) {
      h(i, i) = amplitude * rng.gaussian();
      for (int j = i + 1; j < fiber_dim; ++j) {
        const cplx z = amplitude * rng.gaussian_cplx();
        h(i, j) = z;
        h(j, i) = std::conj(z);
      }
    }
    return h;
  };
  std::vector<FiberOperator> coef_cos, coef_sin;
  for (int k = 0; k < grid.dim(); ++k) {
    coef_cos.push_back(random_hermitian());
    coef_sin.push_back(random_hermitian());
  }

  const FiberOperator base = corner_ones(fiber_dim, rank);
  return ProjectionField::generate(grid, fiber_dim, [&](std::size_t cell) {
    const std::vector<int> xc = grid.coords(cell);
    FiberOperator h(fiber_dim);
    for (int k = 0; k < grid.dim(); ++k) {
      const double phi = 2.0 * std::numbers::pi * xc[k] / grid.sizes()[k];
      h += cplx(std::cos(phi)) * coef_cos[k];
      h += cplx(std::sin(phi)) * coef_sin[k];
    }
    FiberOperator ih(fiber_dim);
    for (int i = 0; i < fiber_dim; ++i)
      for (int j = 0; j < fiber_dim; ++j) ih(i, j) = cplx(0.0, 1.0) * h(i, j);
    const FiberOperator u = matrix_exp(ih);
    FiberOperator p = u * base * u.adjoint();
    // clean the Hermitian defect left by the exponential before validation
    FiberOperator sym(fiber_dim);
    for (int i = 0; i < fiber_dim; ++i)
      for (int j = 0; j < fiber_dim; ++j)
        sym(i, j) = 0.5 * (p(i, j) + std::conj(p(j, i)));
    return sym;
  });
}

Field plane_wave(const GridSpec& grid, int fiber_dim, std::span<const int> mode,
                 int component) {
  if (static_cast<int>(mode.size()) != grid.dim())
    throw std::invalid_argument("plane wave: mode size mismatch");
  if (component < 0 || component >= fiber_dim)
    throw std::invalid_argument("plane wave: component out of range");
  Field f(grid, fiber_dim);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const std::vector<int> xc = grid.coords(c);
    double phase = 0.0;
    for (int k = 0; k < grid.dim(); ++k)
      phase += 2.0 * std::numbers::pi * mode[k] * xc[k] / grid.sizes()[k];
    f.fiber(c)[component] = std::polar(1.0, phase);
  }
  return f;
}

Field random_field(const GridSpec& grid, int fiber_dim, std::uint64_t seed) {
  Rng rng(seed);
  Field f(grid, fiber_dim);
  for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = rng.gaussian_cplx();
  return f;
}

Field indicator(const GridSpec& grid, int fiber_dim, std::size_t cell,
                int component) {
  if (cell >= grid.cells()) throw std::invalid_argument("indicator: cell out of range");
  if (component < 0 || component >= fiber_dim)
    throw std::invalid_argument("indicator: component out of range");
  Field f(grid, fiber_dim);
  f.fiber(cell)[component] = 1.0;
  return f;
}

Projection random_projection(int fiber_dim, int rank, std::uint64_t seed) {
  if (fiber_dim < 1) throw std::invalid_argument("random projection: dimension must be >= 1");
  if (rank < 1 || rank > fiber_dim)
    throw std::invalid_argument("random projection: rank out of range");
  Rng rng(seed);
  std::vector<FiberVector> span;
  for (int r = 0; r < rank; ++r) {
    FiberVector v(fiber_dim);
    for (cplx& z : v) z = rng.gaussian_cplx();
    span.push_back(std::move(v));
  }
  return project_onto_span(span);
}

}  // namespace gflab::presets
