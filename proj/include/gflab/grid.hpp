#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gflab/fiber.hpp"
#include "gflab/types.hpp"

namespace gflab {

// Uniform periodic grid, 1 to 3 axes, cell-major storage with the last axis
// fastest. Spacing h is shared by all axes, so axis k spans a torus of
// circumference N_k * h.
class GridSpec {
 public:
  GridSpec(std::vector<int> sizes, double spacing);

  int dim() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  double spacing() const { return h_; }
  std::size_t cells() const { return cells_; }
  double cell_volume() const { return volume_; }  // h^n
  std::size_t stride(int axis) const { return strides_[axis]; }

  std::size_t index(std::span<const int> coords) const;
  std::vector<int> coords(std::size_t cell) const;
  // periodic neighbor: cell with coordinate shifted by `steps` along `axis`
  std::size_t shift(std::size_t cell, int axis, int steps) const;

  bool operator==(const GridSpec& o) const {
    return sizes_ == o.sizes_ && h_ == o.h_;
  }

 private:
  std::vector<int> sizes_;
  double h_;
  std::vector<std::size_t> strides_;
  std::size_t cells_;
  double volume_;
};

// Decomposes the periodic shift x -> x + direction*e_axis into contiguous
// memory runs. emit(dst, src, len) receives offsets and lengths in units of
// cplx entries, where data[src..] holds the shifted partner of data[dst..]
// and `width` entries are stored per cell. Every cell is covered exactly
// once; the decomposition is what lets gradients run through flat kernels.
void for_shifted_runs(
    const GridSpec& g, int width, int axis, int direction,
    const std::function<void(std::size_t dst, std::size_t src, std::size_t len)>& emit);

// Grid-indexed fiber vectors: the discretization of L^2(torus; C^d).
class Field {
 public:
  Field(GridSpec grid, int fiber_dim);

  const GridSpec& grid() const { return grid_; }
  int fiber_dim() const { return d_; }
  std::size_t size() const { return data_.size(); }  // cells * d
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::span<cplx> fiber(std::size_t cell) {
    return {data_.data() + cell * d_, static_cast<std::size_t>(d_)};
  }
  std::span<const cplx> fiber(std::size_t cell) const {
    return {data_.data() + cell * d_, static_cast<std::size_t>(d_)};
  }
  FiberVector fiber_vector(std::size_t cell) const;
  void set_fiber(std::size_t cell, const FiberVector& v);

  double norm() const;  // sqrt(h^n sum_x |f(x)|^2)
  bool is_finite() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(cplx c);

 private:
  GridSpec grid_;
  int d_;
  std::vector<cplx> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx c, Field f);

// Grid-indexed d x d blocks without projection constraints (gradients of
// projection fields, gauge components, twist terms).
class OperatorField {
 public:
  OperatorField(GridSpec grid, int fiber_dim);

  const GridSpec& grid() const { return grid_; }
  int fiber_dim() const { return d_; }
  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::span<cplx> block(std::size_t cell) {
    const std::size_t w = static_cast<std::size_t>(d_) * d_;
    return {data_.data() + cell * w, w};
  }
  std::span<const cplx> block(std::size_t cell) const {
    const std::size_t w = static_cast<std::size_t>(d_) * d_;
    return {data_.data() + cell * w, w};
  }
  FiberOperator get(std::size_t cell) const;
  void set(std::size_t cell, const FiberOperator& op);

  // sup over cells of the block operator norm
  double sup_norm() const;

 private:
  GridSpec grid_;
  int d_;
  std::vector<cplx> data_;
};

// Grid-indexed projections P_x; every block satisfies the Projection
// invariants (checked at construction).
class ProjectionField {
 public:
  static ProjectionField constant(const GridSpec& grid, const Projection& p);
  static ProjectionField generate(
      const GridSpec& grid, int fiber_dim,
      const std::function<FiberOperator(std::size_t cell)>& fn,
      const Tolerances& tol = {});

  const GridSpec& grid() const { return grid_; }
  int fiber_dim() const { return d_; }
  const cplx* data() const { return data_.data(); }
  std::span<const cplx> block(std::size_t cell) const {
    const std::size_t w = static_cast<std::size_t>(d_) * d_;
    return {data_.data() + cell * w, w};
  }
  FiberOperator get(std::size_t cell) const;

 private:
  ProjectionField(GridSpec grid, int fiber_dim);
  GridSpec grid_;
  int d_;
  std::vector<cplx> data_;
};

// h^n sum_x (f(x)|g(x)); antilinear in f, linear in g.
cplx inner(const Field& f, const Field& g);

// (A f)(x) = A_x f(x) cellwise
Field apply_operator_field(const OperatorField& a, const Field& f);

// forward differences D_k f(x) = (f(x+h e_k) - f(x))/h, one field per axis
std::vector<Field> gradient(const Field& f);

// matching second-difference stencil sum_k (f(x+he_k)+f(x-he_k)-2f(x))/h^2;
// equals -D^dagger D, so summation by parts is exact
Field laplacian(const Field& f);

// Dirichlet energy a(f) = h^n sum_{x,k} |D_k f(x)|^2
double form_a(const Field& f);

// sesquilinear a(f,g) = h^n sum_{x,k} D_k f(x) . conj(D_k g(x));
// linear in f, antilinear in g, so a(f,f) = form_a(f)
cplx form_a_sesq(const Field& f, const Field& g);

// time samples of a field on one grid
struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
};

// sum_j dt_j [ i*(dphi_j|phi_j) + a(phi_j) ] with forward time differences
// dphi_j = (phi_{j+1} - phi_j)/dt_j
cplx lagrangian(const Trajectory& traj);

Field cyclic_shift(const Field& f, int axis, int steps);

}  // namespace gflab
