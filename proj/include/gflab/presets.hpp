#pragma once

// Ready-made projection fields and probe fields used by the CLI scenarios
// and the test suites.  The named fields deliberately cover the three
// qualitative regimes: constant (symmetric), step (piecewise constant with
// two interface cells), rotating (smoothly varying, nowhere locally
// constant at fine resolution).

#include <cstdint>
#include <span>

#include "gflab/fiber.hpp"
#include "gflab/grid.hpp"

namespace gflab::presets {

// diag(1,...,1,0,...,0) with `rank` ones, at every cell
ProjectionField constant_field(const GridSpec& grid, int fiber_dim, int rank = 1);

// axis-0 split: cells in the left half carry diag(1,0,...), the right half
// diag(0,1,0,...); needs fiber_dim >= 2
ProjectionField step_field(const GridSpec& grid, int fiber_dim);

// P_x = R(2*pi*x_1) diag(1,0,...) R(2*pi*x_1)^T with R a rotation in the
// (1,2) fiber plane; needs fiber_dim >= 2
ProjectionField rotating_field(const GridSpec& grid, int fiber_dim);

// P(x) = U(x) diag(1,..,0) U(x)^*, U(x) = exp(i H(x)) with H a Hermitian
// field built from the lowest Fourier mode per axis with seeded random
// coefficients.  Smooth, generically not locally constant.
ProjectionField smooth_random_field(const GridSpec& grid, int fiber_dim,
                                    std::uint64_t seed, int rank = 1,
                                    double amplitude = 0.75);

// exp(2*pi*i m.x) placed in one fiber component
Field plane_wave(const GridSpec& grid, int fiber_dim, std::span<const int> mode,
                 int component = 0);

Field random_field(const GridSpec& grid, int fiber_dim, std::uint64_t seed);

// 1 in the given cell/component, 0 elsewhere
Field indicator(const GridSpec& grid, int fiber_dim, std::size_t cell,
                int component = 0);

// orthogonal projection onto the span of `rank` Gaussian vectors
Projection random_projection(int fiber_dim, int rank, std::uint64_t seed);

}  // namespace gflab::presets
