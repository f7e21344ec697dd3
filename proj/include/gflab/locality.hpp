#pragma once

// Brute-force locality analysis on tiny grids.  A GlobalOperator is a dense
// (N*d) x (N*d) matrix acting on flattened Fields (cell-major, so the d x d
// block at (x, y) couples cell y into cell x).  The questions answered here:
// does a global projection commute with every cell-indicator multiplier, and
// if so, what does its strictly-local (block-diagonal) form look like?

#include <cstdint>
#include <vector>

#include "gflab/fiber.hpp"
#include "gflab/grid.hpp"
#include "gflab/projection_calculus.hpp"
#include "gflab/types.hpp"

namespace gflab {

class GlobalOperator {
 public:
  // zero matrix; throws when cells * fiber_dim exceeds 2048 (dense analysis
  // is cubic in N*d, so larger requests are refused rather than attempted)
  GlobalOperator(GridSpec grid, int fiber_dim);

  static constexpr std::size_t max_dim = 2048;

  const GridSpec& grid() const { return grid_; }
  int fiber_dim() const { return d_; }
  std::size_t dim() const { return dim_; }  // N*d

  cplx& at(std::size_t row, std::size_t col) { return m_[row * dim_ + col]; }
  const cplx& at(std::size_t row, std::size_t col) const { return m_[row * dim_ + col]; }
  cplx* data() { return m_.data(); }
  const cplx* data() const { return m_.data(); }

  FiberOperator block(std::size_t x, std::size_t y) const;
  void set_block(std::size_t x, std::size_t y, const FiberOperator& op);

  bool is_finite() const;
  Field apply(const Field& f) const;

 private:
  GridSpec grid_;
  int d_;
  std::size_t dim_;
  std::vector<cplx> m_;
};

// block-diagonal multiplication operator built from a projection field
GlobalOperator lift(const ProjectionField& p);

// (Pf)(x) = (f(x) + f(-x)) / 2 on the torus.  A genuine orthogonal
// projection, but not strictly local: the (x, -x) coupling block is Id/2.
GlobalOperator even_part_projection(const GridSpec& grid, int fiber_dim);

struct ProjectionDefect {
  double hermiticity = 0.0;  // Frobenius norm of g minus its adjoint (upper bound on the operator norm)
  double idempotence = 0.0;  // power-iteration estimate of ||g^2 - g||
};

ProjectionDefect projection_defect(const GlobalOperator& g);

struct LocalizabilityVerdict {
  bool localizable = false;
  double worst_commutator = 0.0;        // max over cells j of ||[g, M_j]||
  double worst_offdiagonal_block = 0.0; // max over x != y of ||block(x, y)||
};

// Requires a projection (defects within tol.algebraic), else throws.
// Runs two independent routes and insists they agree:
//   1. commutators with every cell-indicator multiplier M_j;
//   2. direct scan of the off-diagonal blocks.
// For fixed j the commutator is supported on block row j and block column j
// with a zero diagonal block, so its norm is exactly
// max(||column stack||, ||row stack||), each a d x d Gram eigenproblem.
LocalizabilityVerdict is_localizable(const GlobalOperator& g,
                                     const Tolerances& tol = {});

// Diagonal of a localizable projection as a ProjectionField (each block is
// revalidated).  Throws "not strictly local" when is_localizable fails.
ProjectionField extract_blocks(const GlobalOperator& g,
                               const Tolerances& tol = {});

struct IdealSubspaceVerdict {
  bool ideal = false;
  LocalizabilityVerdict locality;
  // per-cell outcomes of the lattice-ideal test; empty when stage one
  // (localizability) already failed
  std::vector<char> cell_ideal;
  std::vector<std::size_t> failing_cells;
};

// Two-stage test: the projection must be strictly local, and every extracted
// block must project onto a coordinate ideal of the fiber.
IdealSubspaceVerdict is_ideal_subspace_projection(const GlobalOperator& g,
                                                  int samples = 256,
                                                  std::uint64_t seed = 42,
                                                  const Tolerances& tol = {});

}  // namespace gflab
