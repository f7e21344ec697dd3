#pragma once

#include <vector>

#include "gflab/types.hpp"

namespace gflab {

// One fiber value: an element of C^d.
using FiberVector = std::vector<cplx>;

double norm(const FiberVector& v);
// (v|w) = sum conj(v_i)*w_i; antilinear in the first slot.
cplx inner(const FiberVector& v, const FiberVector& w);
// componentwise |v_i| (entries real >= 0, kept complex-typed)
FiberVector modulus(const FiberVector& v);
bool is_finite(const FiberVector& v);

// Dense d x d complex matrix, row-major.
class FiberOperator {
 public:
  FiberOperator() = default;
  explicit FiberOperator(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}
  static FiberOperator identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * dim_ + j];
  }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  FiberOperator adjoint() const;
  FiberVector apply(const FiberVector& v) const;
  cplx trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  FiberOperator& operator+=(const FiberOperator& o);
  FiberOperator& operator-=(const FiberOperator& o);
  FiberOperator& operator*=(cplx c);

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

FiberOperator operator+(FiberOperator a, const FiberOperator& b);
FiberOperator operator-(FiberOperator a, const FiberOperator& b);
FiberOperator operator*(const FiberOperator& a, const FiberOperator& b);
FiberOperator operator*(cplx c, FiberOperator a);
FiberOperator operator-(FiberOperator a);

// Largest singular value, computed from the spectrum of A^dagger A.
// This is the norm behind every tolerance comparison on fiber operators.
double operator_norm(const FiberOperator& a);

// Eigenvalues of a Hermitian operator, ascending. The input's Hermitian part
// is taken first, so tiny symmetry defects only perturb the result by their
// own norm. Cyclic complex Jacobi; d is small (<= 8) throughout.
std::vector<double> hermitian_eigenvalues(const FiberOperator& a);

// exp(a) by Taylor series with scaling and squaring.
FiberOperator matrix_exp(const FiberOperator& a);

// Hermitian idempotent with eigenvalues pinned to {0,1}. Construction
// validates; all downstream code may rely on the invariants.
class Projection {
 public:
  explicit Projection(FiberOperator op, const Tolerances& tol = {});
  const FiberOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }
  int rank() const { return rank_; }

 private:
  FiberOperator op_;
  int rank_;
};

// Orthogonal projection onto span(vectors) via modified Gram-Schmidt with a
// re-orthogonalization pass; inputs whose residual drops below
// tol.algebraic are treated as dependent and skipped.
Projection project_onto_span(const std::vector<FiberVector>& vectors,
                             const Tolerances& tol = {});

// Id - p
Projection complement(const Projection& p);

}  // namespace gflab
