#include "gflab/locality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gflab/parallel.hpp"
#include "gflab/rng.hpp"

namespace gflab {

GlobalOperator::GlobalOperator(GridSpec grid, int fiber_dim)
    : grid_(std::move(grid)), d_(fiber_dim) {
  if (d_ < 1) throw std::invalid_argument("global operator: fiber dimension must be >= 1");
  dim_ = grid_.cells() * static_cast<std::size_t>(d_);
  if (dim_ > max_dim)
    throw std::invalid_argument("global operator: N*d must be <= 2048");
  m_.assign(dim_ * dim_, cplx(0.0, 0.0));
}

FiberOperator GlobalOperator::block(std::size_t x, std::size_t y) const {
  FiberOperator b(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      b(i, j) = at(x * d_ + i, y * d_ + j);
  return b;
}

void GlobalOperator::set_block(std::size_t x, std::size_t y, const FiberOperator& op) {
  if (op.dim() != d_) throw std::invalid_argument("global operator: block dimension mismatch");
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      at(x * d_ + i, y * d_ + j) = op(i, j);
}

bool GlobalOperator::is_finite() const {
  for (const cplx& v : m_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Field GlobalOperator::apply(const Field& f) const {
  if (!(f.grid() == grid_) || f.fiber_dim() != d_)
    throw std::invalid_argument("grid mismatch");
  Field out(grid_, d_);
  const cplx* x = f.data();
  cplx* y = out.data();
  parallel_for(dim_, [&](std::size_t r) {
    const cplx* row = m_.data() + r * dim_;
    cplx acc(0.0, 0.0);
    for (std::size_t c = 0; c < dim_; ++c) acc += row[c] * x[c];
    y[r] = acc;
  });
  return out;
}

GlobalOperator lift(const ProjectionField& p) {
  GlobalOperator g(p.grid(), p.fiber_dim());
  for (std::size_t c = 0; c < p.grid().cells(); ++c) g.set_block(c, c, p.get(c));
  return g;
}

GlobalOperator even_part_projection(const GridSpec& grid, int fiber_dim) {
  GlobalOperator g(grid, fiber_dim);
  const int d = fiber_dim;
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    std::vector<int> xc = grid.coords(c);
    for (int k = 0; k < grid.dim(); ++k)
      xc[k] = (grid.sizes()[k] - xc[k]) % grid.sizes()[k];
    const std::size_t mirror = grid.index(xc);
    for (int i = 0; i < d; ++i) {
      g.at(c * d + i, c * d + i) += 0.5;
      g.at(c * d + i, mirror * d + i) += 0.5;
    }
  }
  return g;
}

namespace {

// y = g * x for raw vectors of length dim
void matvec(const GlobalOperator& g, const cplx* x, cplx* y) {
  const std::size_t n = g.dim();
  parallel_for(n, [&](std::size_t r) {
    const cplx* row = g.data() + r * n;
    cplx acc(0.0, 0.0);
    for (std::size_t c = 0; c < n; ++c) acc += row[c] * x[c];
    y[r] = acc;
  });
}

double vec_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

ProjectionDefect projection_defect(const GlobalOperator& g) {
  if (!g.is_finite()) throw std::invalid_argument("global operator: non-finite entries");
  const std::size_t n = g.dim();

  ProjectionDefect out;
  double herm2 = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const double m = std::abs(g.at(r, c) - std::conj(g.at(c, r)));
      herm2 += (c == r ? 1.0 : 2.0) * m * m;
    }
  out.hermiticity = std::sqrt(herm2);

  // ||g^2 - g|| by power iteration on the (Hermitian, implicit) defect matrix
  Rng rng(Rng::derive(1, "projection-defect"));
  std::vector<cplx> v(n), gv(n), av(n);
  for (cplx& z : v) z = rng.gaussian_cplx();
  double est = 0.0;
  for (int it = 0; it < 80; ++it) {
    const double nv = vec_norm(v);
    if (nv == 0.0) break;
    for (cplx& z : v) z /= nv;
    matvec(g, v.data(), gv.data());
    matvec(g, gv.data(), av.data());
    for (std::size_t i = 0; i < n; ++i) av[i] -= gv[i];
    est = vec_norm(av);
    std::swap(v, av);
  }
  out.idempotence = est;
  return out;
}

LocalizabilityVerdict is_localizable(const GlobalOperator& g, const Tolerances& tol) {
  const ProjectionDefect defect = projection_defect(g);
  if (defect.hermiticity > tol.algebraic || defect.idempotence > tol.algebraic)
    throw std::invalid_argument("localizability: input is not a projection");

  const std::size_t cells = g.grid().cells();
  const int d = g.fiber_dim();

  std::vector<double> comm(cells, 0.0);
  std::vector<double> blocks(cells, 0.0);
  parallel_for(cells, [&](std::size_t j) {
    // Gram matrices of the stacked off-diagonal column and row blocks of j
    FiberOperator col_gram(d), row_gram(d);
    double worst_block = 0.0;
    for (std::size_t x = 0; x < cells; ++x) {
      if (x == j) continue;
      const FiberOperator bxj = g.block(x, j);
      const FiberOperator bjx = g.block(j, x);
      col_gram += bxj.adjoint() * bxj;
      row_gram += bjx * bjx.adjoint();
      worst_block = std::max(worst_block, operator_norm(bxj));
    }
    auto top = [](const FiberOperator& h) {
      const std::vector<double> ev = hermitian_eigenvalues(h);
      return std::sqrt(std::max(0.0, ev.back()));
    };
    comm[j] = std::max(top(col_gram), top(row_gram));
    blocks[j] = worst_block;
  });

  LocalizabilityVerdict v;
  for (std::size_t j = 0; j < cells; ++j) {
    v.worst_commutator = std::max(v.worst_commutator, comm[j]);
    v.worst_offdiagonal_block = std::max(v.worst_offdiagonal_block, blocks[j]);
  }
  const bool by_comm = v.worst_commutator <= tol.ideal;
  const bool by_blocks = v.worst_offdiagonal_block <= tol.ideal;
  if (by_comm != by_blocks)
    throw std::logic_error("localizability: commutator and block routes disagree");
  v.localizable = by_comm;
  return v;
}

ProjectionField extract_blocks(const GlobalOperator& g, const Tolerances& tol) {
  const LocalizabilityVerdict v = is_localizable(g, tol);
  if (!v.localizable) throw std::invalid_argument("not strictly local");
  return ProjectionField::generate(
      g.grid(), g.fiber_dim(),
      [&](std::size_t cell) { return g.block(cell, cell); }, tol);
}

IdealSubspaceVerdict is_ideal_subspace_projection(const GlobalOperator& g,
                                                  int samples,
                                                  std::uint64_t seed,
                                                  const Tolerances& tol) {
  IdealSubspaceVerdict out;
  out.locality = is_localizable(g, tol);
  if (!out.locality.localizable) {
    out.ideal = false;
    return out;
  }
  const ProjectionField field = extract_blocks(g, tol);
  const std::size_t cells = g.grid().cells();
  out.cell_ideal.assign(cells, 0);
  parallel_for(cells, [&](std::size_t c) {
    const Projection q(field.get(c), tol);
    const auto verdict = is_ideal_projection(q, samples, Rng::derive(seed, "cell") + c, tol);
    out.cell_ideal[c] = verdict.ideal ? 1 : 0;
  });
  for (std::size_t c = 0; c < cells; ++c)
    if (!out.cell_ideal[c]) out.failing_cells.push_back(c);
  out.ideal = out.failing_cells.empty();
  return out;
}

}  // namespace gflab
