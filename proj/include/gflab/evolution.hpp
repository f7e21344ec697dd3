#pragma once

#include <span>
#include <vector>

#include "gflab/grid.hpp"

namespace gflab {

// Discrete Laplacian eigenvalue of Fourier mode m:
//   lambda_m = -(4/h^2) sum_k sin^2(pi m_k / N_k)
double laplacian_eigenvalue(const GridSpec& g, std::span<const int> mode);

// Heat semigroup e^{t Laplacian}, exact in time via mode-wise multipliers
// e^{t lambda_m} (naive separable DFT; grids are desk-scale). t = 0 returns
// the input unchanged.
Field evolve_heat(const Field& f, double t);

// Unitary group e^{i sign t Laplacian}; sign picks the direction.
Field evolve_schrodinger(const Field& f, double t, int sign = +1);

// (P f)(x) = P_x f(x)
Field apply_projection_field(const ProjectionField& p, const Field& f);

// (e^{is P} f)(x) = f(x) + (e^{is} - 1) P_x f(x), cellwise unitary
Field apply_exp_group(const ProjectionField& p, double s, const Field& f);

// ||(Id - P) e^{t Laplacian} P f|| / ||P f|| for each requested time;
// quantifies how far the range of P is from being heat-invariant.
std::vector<double> leakage(const ProjectionField& p, const Field& f,
                            std::span<const double> times);

}  // namespace gflab
