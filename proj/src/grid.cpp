#include "gflab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "gflab/kernels.hpp"

namespace gflab {

GridSpec::GridSpec(std::vector<int> sizes, double spacing)
    : sizes_(std::move(sizes)), h_(spacing) {
  if (sizes_.empty() || sizes_.size() > 3)
    throw std::invalid_argument("grid: dimension must be 1..3");
  for (int n : sizes_)
    if (n < 2) throw std::invalid_argument("grid: each axis needs >= 2 cells");
  if (!(h_ > 0.0) || !std::isfinite(h_))
    throw std::invalid_argument("grid: spacing must be positive");

  strides_.assign(sizes_.size(), 1);
  for (int k = static_cast<int>(sizes_.size()) - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * static_cast<std::size_t>(sizes_[k + 1]);
  cells_ = strides_[0] * static_cast<std::size_t>(sizes_[0]);
  volume_ = 1.0;
  for (std::size_t k = 0; k < sizes_.size(); ++k) volume_ *= h_;
}

std::size_t GridSpec::index(std::span<const int> coords) const {
  if (coords.size() != sizes_.size())
    throw std::invalid_argument("grid: coordinate arity mismatch");
  std::size_t cell = 0;
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    int c = coords[k];
    if (c < 0 || c >= sizes_[k]) throw std::invalid_argument("grid: coordinate out of range");
    cell += static_cast<std::size_t>(c) * strides_[k];
  }
  return cell;
}

std::vector<int> GridSpec::coords(std::size_t cell) const {
  std::vector<int> c(sizes_.size());
  for (std::size_t k = 0; k < sizes_.size(); ++k)
    c[k] = static_cast<int>((cell / strides_[k]) % static_cast<std::size_t>(sizes_[k]));
  return c;
}

std::size_t GridSpec::shift(std::size_t cell, int axis, int steps) const {
  const int n = sizes_[axis];
  const std::size_t b = strides_[axis];
  const int i = static_cast<int>((cell / b) % static_cast<std::size_t>(n));
  int j = (i + steps) % n;
  if (j < 0) j += n;
  return cell + (static_cast<std::size_t>(j) - static_cast<std::size_t>(i)) * b;
}

void for_shifted_runs(
    const GridSpec& g, int width, int axis, int direction,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& emit) {
  const std::size_t w = static_cast<std::size_t>(width);
  const std::size_t b = g.stride(axis);
  const std::size_t nk = static_cast<std::size_t>(g.sizes()[axis]);
  const std::size_t block = nk * b;
  const std::size_t outer = g.cells() / block;
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * block;
    const std::size_t bulk = (nk - 1) * b;
    if (direction > 0) {
      emit(base * w, (base + b) * w, bulk * w);
      emit((base + bulk) * w, base * w, b * w);
    } else {
      emit((base + b) * w, base * w, bulk * w);
      emit(base * w, (base + bulk) * w, b * w);
    }
  }
}

Field::Field(GridSpec grid, int fiber_dim)
    : grid_(std::move(grid)), d_(fiber_dim),
      data_(grid_.cells() * static_cast<std::size_t>(fiber_dim)) {
  if (fiber_dim < 1) throw std::invalid_argument("field: fiber dimension must be >= 1");
}

FiberVector Field::fiber_vector(std::size_t cell) const {
  auto span = fiber(cell);
  return FiberVector(span.begin(), span.end());
}

void Field::set_fiber(std::size_t cell, const FiberVector& v) {
  if (static_cast<int>(v.size()) != d_)
    throw std::invalid_argument("field: fiber dimension mismatch");
  auto span = fiber(cell);
  for (int i = 0; i < d_; ++i) span[i] = v[i];
}

double Field::norm() const {
  const double* raw = reinterpret_cast<const double*>(data_.data());
  double s = kernels::active().sum_sq(raw, 2 * data_.size());
  return std::sqrt(grid_.cell_volume() * s);
}

bool Field::is_finite() const {
  for (const cplx& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {
void require_same_layout(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid()) || a.fiber_dim() != b.fiber_dim())
    throw std::invalid_argument("grid mismatch");
}
}  // namespace

Field& Field::operator+=(const Field& o) {
  require_same_layout(*this, o);
  kernels::active().axpy(1.0, o.data(), data(), size());
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_same_layout(*this, o);
  kernels::active().axpy(-1.0, o.data(), data(), size());
  return *this;
}

Field& Field::operator*=(cplx c) {
  kernels::active().scale(c, data(), size());
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx c, Field f) { return f *= c; }

OperatorField::OperatorField(GridSpec grid, int fiber_dim)
    : grid_(std::move(grid)), d_(fiber_dim),
      data_(grid_.cells() * static_cast<std::size_t>(fiber_dim) * fiber_dim) {
  if (fiber_dim < 1) throw std::invalid_argument("operator field: fiber dimension must be >= 1");
}

FiberOperator OperatorField::get(std::size_t cell) const {
  FiberOperator op(d_);
  auto b = block(cell);
  for (std::size_t i = 0; i < b.size(); ++i) op.data()[i] = b[i];
  return op;
}

void OperatorField::set(std::size_t cell, const FiberOperator& op) {
  if (op.dim() != d_) throw std::invalid_argument("operator field: dimension mismatch");
  auto b = block(cell);
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = op.data()[i];
}

double OperatorField::sup_norm() const {
  double worst = 0.0;
  for (std::size_t c = 0; c < grid_.cells(); ++c)
    worst = std::max(worst, operator_norm(get(c)));
  return worst;
}

ProjectionField::ProjectionField(GridSpec grid, int fiber_dim)
    : grid_(std::move(grid)), d_(fiber_dim),
      data_(grid_.cells() * static_cast<std::size_t>(fiber_dim) * fiber_dim) {}

ProjectionField ProjectionField::constant(const GridSpec& grid, const Projection& p) {
  ProjectionField out(grid, p.dim());
  const std::size_t w = static_cast<std::size_t>(p.dim()) * p.dim();
  for (std::size_t c = 0; c < grid.cells(); ++c)
    for (std::size_t i = 0; i < w; ++i) out.data_[c * w + i] = p.op().data()[i];
  return out;
}

ProjectionField ProjectionField::generate(
    const GridSpec& grid, int fiber_dim,
    const std::function<FiberOperator(std::size_t)>& fn, const Tolerances& tol) {
  ProjectionField out(grid, fiber_dim);
  const std::size_t w = static_cast<std::size_t>(fiber_dim) * fiber_dim;
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    Projection p(fn(c), tol);  // validates Hermitian/idempotent/spectrum
    if (p.dim() != fiber_dim)
      throw std::invalid_argument("projection field: dimension mismatch");
    for (std::size_t i = 0; i < w; ++i) out.data_[c * w + i] = p.op().data()[i];
  }
  return out;
}

FiberOperator ProjectionField::get(std::size_t cell) const {
  FiberOperator op(d_);
  auto b = block(cell);
  for (std::size_t i = 0; i < b.size(); ++i) op.data()[i] = b[i];
  return op;
}

cplx inner(const Field& f, const Field& g) {
  require_same_layout(f, g);
  // dot_conj(a,b) = sum a conj(b); (f|g) puts the conjugate on f
  cplx s = kernels::active().dot_conj(g.data(), f.data(), f.size());
  return f.grid().cell_volume() * s;
}

Field apply_operator_field(const OperatorField& a, const Field& f) {
  if (!(a.grid() == f.grid()) || a.fiber_dim() != f.fiber_dim())
    throw std::invalid_argument("grid mismatch");
  Field out(f.grid(), f.fiber_dim());
  kernels::active().matvec_batch(f.fiber_dim(), a.data(), f.data(), out.data(),
                                 f.grid().cells());
  return out;
}

namespace {

// out(x) = (f(x + h e_axis) - f(x)) / h through flat kernel runs
void forward_difference(const Field& f, int axis, Field& out) {
  const double inv_h = 1.0 / f.grid().spacing();
  const cplx* src = f.data();
  cplx* dst = out.data();
  for_shifted_runs(f.grid(), f.fiber_dim(), axis, +1,
                   [&](std::size_t d0, std::size_t s0, std::size_t len) {
                     kernels::active().diff_scaled(src + s0, src + d0, inv_h,
                                                   dst + d0, len);
                   });
}

}  // namespace

std::vector<Field> gradient(const Field& f) {
  std::vector<Field> out;
  out.reserve(f.grid().dim());
  for (int k = 0; k < f.grid().dim(); ++k) {
    Field g(f.grid(), f.fiber_dim());
    forward_difference(f, k, g);
    out.push_back(std::move(g));
  }
  return out;
}

Field laplacian(const Field& f) {
  const GridSpec& g = f.grid();
  Field acc(g, f.fiber_dim());
  const cplx* src = f.data();
  cplx* dst = acc.data();
  for (int k = 0; k < g.dim(); ++k) {
    for (int dir : {+1, -1}) {
      for_shifted_runs(g, f.fiber_dim(), k, dir,
                       [&](std::size_t d0, std::size_t s0, std::size_t len) {
                         kernels::active().add_scaled(src + s0, 1.0, dst + d0, len);
                       });
    }
  }
  kernels::active().axpy(cplx(-2.0 * g.dim(), 0.0), src, dst, acc.size());
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  kernels::active().scale(inv_h2, dst, acc.size());
  return acc;
}

double form_a(const Field& f) {
  Field scratch(f.grid(), f.fiber_dim());
  double s = 0.0;
  for (int k = 0; k < f.grid().dim(); ++k) {
    forward_difference(f, k, scratch);
    const double* raw = reinterpret_cast<const double*>(scratch.data());
    s += kernels::active().sum_sq(raw, 2 * scratch.size());
  }
  return f.grid().cell_volume() * s;
}

cplx form_a_sesq(const Field& f, const Field& g) {
  require_same_layout(f, g);
  Field df(f.grid(), f.fiber_dim());
  Field dg(f.grid(), f.fiber_dim());
  cplx s = 0.0;
  for (int k = 0; k < f.grid().dim(); ++k) {
    forward_difference(f, k, df);
    forward_difference(g, k, dg);
    s += kernels::active().dot_conj(df.data(), dg.data(), df.size());
  }
  return f.grid().cell_volume() * s;
}

cplx lagrangian(const Trajectory& traj) {
  if (traj.times.size() < 2) throw std::invalid_argument("trajectory: need >= 2 samples");
  if (traj.times.size() != traj.states.size())
    throw std::invalid_argument("trajectory: times/states length mismatch");
  for (std::size_t j = 1; j < traj.states.size(); ++j)
    require_same_layout(traj.states[j], traj.states[0]);

  cplx total = 0.0;
  for (std::size_t j = 0; j + 1 < traj.times.size(); ++j) {
    const double dt = traj.times[j + 1] - traj.times[j];
    if (!(dt > 0.0)) throw std::invalid_argument("trajectory: times must increase");
    Field dphi = traj.states[j + 1];
    dphi -= traj.states[j];
    dphi *= cplx(1.0 / dt, 0.0);
    total += dt * (cplx(0.0, 1.0) * inner(dphi, traj.states[j]) +
                   form_a(traj.states[j]));
  }
  return total;
}

Field cyclic_shift(const Field& f, int axis, int steps) {
  Field out(f.grid(), f.fiber_dim());
  for (std::size_t c = 0; c < f.grid().cells(); ++c) {
    const std::size_t src = f.grid().shift(c, axis, steps);
    auto in = f.fiber(src);
    auto dst = out.fiber(c);
    for (int i = 0; i < f.fiber_dim(); ++i) dst[i] = in[i];
  }
  return out;
}

}  // namespace gflab
