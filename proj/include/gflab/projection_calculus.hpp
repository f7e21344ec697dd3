#pragma once

#include <cstdint>
#include <vector>

#include "gflab/fiber.hpp"
#include "gflab/grid.hpp"

namespace gflab {

// e^{zP} = Id + (e^z - 1) P. For purely imaginary z this is the unitary
// group through P.
FiberOperator exp_projection(const Projection& p, cplx z);
// same formula on a raw block that is already known to be a projection
FiberOperator exp_projection_block(const FiberOperator& p, cplx z);

// forward differences D_k P of a projection field, one OperatorField per axis
std::vector<OperatorField> gradient(const ProjectionField& p);

// Off-diagonal decomposition of D_k P relative to P itself:
//   range_to_kernel = P_perp (D_k P) P,  kernel_to_range = P (D_k P) P_perp.
// In the continuum their sum is the whole derivative; discretely the
// leftover diagonal blocks shrink like O(h).
struct GradSplit {
  std::vector<OperatorField> range_to_kernel;
  std::vector<OperatorField> kernel_to_range;
};
GradSplit grad_offdiagonal_decompose(const ProjectionField& p);

// per cell ||P (D_kP) P|| + ||P_perp (D_kP) P_perp||, indexed [axis][cell]
std::vector<std::vector<double>> diagonal_block_residuals(const ProjectionField& p);
double diagonal_block_residual(const ProjectionField& p);  // max over all

// e^{z d(P)} (D_k P) per axis: the twist that moves exponentials through
// projection gradients
std::vector<OperatorField> exp_grad_twist(const ProjectionField& p, cplx z);

// Lattice-ideal test for the range of q. Sampled route: check
// |(Id-q)v| = (Id-q)|v| on 2d coordinate vectors (+-e_j) plus `samples`
// complex Gaussian draws. Structural route: q is a 0/1 diagonal matrix up to
// tol.ideal. Both verdicts must agree (logic_error otherwise; they coincide
// mathematically because fiber ideals are exactly coordinate subspaces).
struct IdealProjectionVerdict {
  bool ideal;
  double worst_residual;       // sampled lattice criterion
  double structural_residual;  // entrywise distance from 0/1 diagonal form
};
IdealProjectionVerdict is_ideal_projection(const Projection& q, int samples,
                                           std::uint64_t seed = 42,
                                           const Tolerances& tol = {});

}  // namespace gflab
