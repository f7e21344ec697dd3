#include "gflab/projection_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "gflab/kernels.hpp"
#include "gflab/rng.hpp"

namespace gflab {

FiberOperator exp_projection_block(const FiberOperator& p, cplx z) {
  FiberOperator out = FiberOperator::identity(p.dim());
  const cplx w = std::exp(z) - 1.0;
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) out(i, j) += w * p(i, j);
  return out;
}

FiberOperator exp_projection(const Projection& p, cplx z) {
  return exp_projection_block(p.op(), z);
}

std::vector<OperatorField> gradient(const ProjectionField& p) {
  const GridSpec& g = p.grid();
  const int w = p.fiber_dim() * p.fiber_dim();
  const double inv_h = 1.0 / g.spacing();
  std::vector<OperatorField> out;
  out.reserve(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    OperatorField dk(g, p.fiber_dim());
    const cplx* src = p.data();
    cplx* dst = dk.data();
    for_shifted_runs(g, w, k, +1,
                     [&](std::size_t d0, std::size_t s0, std::size_t len) {
                       kernels::active().diff_scaled(src + s0, src + d0, inv_h,
                                                     dst + d0, len);
                     });
    out.push_back(std::move(dk));
  }
  return out;
}

GradSplit grad_offdiagonal_decompose(const ProjectionField& p) {
  const GridSpec& g = p.grid();
  const int d = p.fiber_dim();
  const FiberOperator id = FiberOperator::identity(d);
  std::vector<OperatorField> grads = gradient(p);

  GradSplit split;
  for (int k = 0; k < g.dim(); ++k) {
    OperatorField rk(g, d);  // P_perp M P
    OperatorField kr(g, d);  // P M P_perp
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const FiberOperator pc = p.get(c);
      const FiberOperator pp = id - pc;
      const FiberOperator m = grads[k].get(c);
      rk.set(c, pp * m * pc);
      kr.set(c, pc * m * pp);
    }
    split.range_to_kernel.push_back(std::move(rk));
    split.kernel_to_range.push_back(std::move(kr));
  }
  return split;
}

std::vector<std::vector<double>> diagonal_block_residuals(const ProjectionField& p) {
  const GridSpec& g = p.grid();
  const int d = p.fiber_dim();
  const FiberOperator id = FiberOperator::identity(d);
  std::vector<OperatorField> grads = gradient(p);

  std::vector<std::vector<double>> out(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    out[k].resize(g.cells());
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const FiberOperator pc = p.get(c);
      const FiberOperator pp = id - pc;
      const FiberOperator m = grads[k].get(c);
      out[k][c] = operator_norm(pc * m * pc) + operator_norm(pp * m * pp);
    }
  }
  return out;
}

double diagonal_block_residual(const ProjectionField& p) {
  double worst = 0.0;
  for (const auto& axis : diagonal_block_residuals(p))
    for (double r : axis) worst = std::max(worst, r);
  return worst;
}

std::vector<OperatorField> exp_grad_twist(const ProjectionField& p, cplx z) {
  const GridSpec& g = p.grid();
  std::vector<OperatorField> grads = gradient(p);
  std::vector<OperatorField> out;
  out.reserve(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    OperatorField tw(g, p.fiber_dim());
    for (std::size_t c = 0; c < g.cells(); ++c)
      tw.set(c, exp_projection_block(p.get(c), z) * grads[k].get(c));
    out.push_back(std::move(tw));
  }
  return out;
}

IdealProjectionVerdict is_ideal_projection(const Projection& q, int samples,
                                           std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) throw std::invalid_argument("ideal test: samples must be >= 1");
  const int d = q.dim();
  const FiberOperator r = FiberOperator::identity(d) - q.op();

  auto residual = [&](const FiberVector& v) {
    const FiberVector rv = r.apply(v);
    FiberVector lhs = modulus(rv);            // |(Id-q)v|
    const FiberVector rhs = r.apply(modulus(v));  // (Id-q)|v|
    for (int i = 0; i < d; ++i) lhs[i] -= rhs[i];
    return norm(lhs);
  };

  double worst = 0.0;
  for (int j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      FiberVector e(d, cplx(0.0));
      e[j] = sign;
      worst = std::max(worst, residual(e));
    }
  }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    FiberVector v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.gaussian_cplx();
    worst = std::max(worst, residual(v));
  }

  double structural = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double a = std::abs(q.op()(i, j));
      if (i == j)
        structural = std::max(structural, std::min(a, std::abs(a - 1.0)));
      else
        structural = std::max(structural, a);
    }
  }

  const bool sampled_ok = worst <= tol.ideal;
  const bool structural_ok = structural <= tol.ideal;
  if (sampled_ok != structural_ok)
    throw std::logic_error("ideal test: sampled and structural verdicts disagree");
  return {sampled_ok, worst, structural};
}

}  // namespace gflab
