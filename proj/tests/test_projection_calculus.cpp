#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gflab/presets.hpp"
#include "gflab/projection_calculus.hpp"
#include "gflab/rng.hpp"

using namespace gflab;

namespace {

constexpr double kPi = std::numbers::pi;

// 40-term Taylor sum of exp(zP) with honest matrix powers (the projection
// identity is never used, so this stays an independent oracle). Extended
// precision keeps the oracle's own rounding far below the 1e-12 gate.
FiberOperator series_exp(const FiberOperator& p, cplx z) {
  using lcplx = std::complex<long double>;
  const int d = p.dim();
  const std::size_t nn = static_cast<std::size_t>(d) * d;
  std::vector<lcplx> zp(nn), power(nn), acc(nn), next(nn);
  for (std::size_t i = 0; i < nn; ++i)
    zp[i] = lcplx(p.data()[i].real(), p.data()[i].imag()) *
            lcplx(z.real(), z.imag());
  for (int i = 0; i < d; ++i) {
    power[static_cast<std::size_t>(i) * d + i] = 1.0L;
    acc[static_cast<std::size_t>(i) * d + i] = 1.0L;
  }
  long double factorial = 1.0L;
  for (int k = 1; k <= 40; ++k) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        lcplx sum = 0.0L;
        for (int l = 0; l < d; ++l)
          sum += power[static_cast<std::size_t>(i) * d + l] *
                 zp[static_cast<std::size_t>(l) * d + j];
        next[static_cast<std::size_t>(i) * d + j] = sum;
      }
    power.swap(next);
    factorial *= k;
    for (std::size_t i = 0; i < nn; ++i) acc[i] += power[i] / factorial;
  }
  FiberOperator out(d);
  for (std::size_t i = 0; i < nn; ++i)
    out.data()[i] = cplx(static_cast<double>(acc[i].real()),
                         static_cast<double>(acc[i].imag()));
  return out;
}

double sup_distance(const OperatorField& a, const OperatorField& b) {
  double worst = 0.0;
  for (std::size_t c = 0; c < a.grid().cells(); ++c)
    worst = std::max(worst, operator_norm(a.get(c) - b.get(c)));
  return worst;
}

}  // namespace

TEST_CASE("closed-form exponential matches the series on random projections") {
  Rng seeds(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(seeds.below(8));
    const int rank = 1 + static_cast<int>(seeds.below(static_cast<std::uint64_t>(d)));
    const Projection p = presets::random_projection(d, rank, seeds.next_u64());
    // |z| <= 2*pi, arbitrary direction
    const double r = 2.0 * kPi * seeds.uniform();
    const cplx z = std::polar(r, 2.0 * kPi * seeds.uniform());
    // entries reach e^{2pi} ~ 535 where a double ulp is 1.1e-13, so measure
    // the residual relative to max(1, |exp(zP)|)
    const FiberOperator oracle = series_exp(p.op(), z);
    const double scale = std::max(1.0, operator_norm(oracle));
    worst = std::max(worst,
                     operator_norm(exp_projection(p, z) - oracle) / scale);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("projection exponential special values and group law") {
  const Projection p = presets::random_projection(4, 2, 77);

  // z = 0 gives the identity with no rounding at all
  CHECK(operator_norm(exp_projection(p, 0.0) - FiberOperator::identity(4)) == 0.0);

  // z = i*pi flips the range: Id - 2P
  FiberOperator flip = FiberOperator::identity(4);
  FiberOperator twop = p.op();
  twop *= 2.0;
  flip -= twop;
  CHECK(operator_norm(exp_projection(p, cplx(0.0, kPi)) - flip) <= 1e-14);

  // one-parameter group in z
  const cplx z1(0.3, -0.8), z2(-1.1, 0.4);
  CHECK(operator_norm(exp_projection(p, z1) * exp_projection(p, z2) -
                      exp_projection(p, z1 + z2)) <= 1e-13);
  CHECK(operator_norm(exp_projection(p, z1) * exp_projection(p, -z1) -
                      FiberOperator::identity(4)) <= 1e-13);

  // imaginary z is unitary
  const FiberOperator u = exp_projection(p, cplx(0.0, 1.9));
  CHECK(operator_norm(u * u.adjoint() - FiberOperator::identity(4)) <= 1e-13);

  // agrees with the general matrix exponential
  FiberOperator zp = p.op();
  zp *= z1;
  const FiberOperator viaexp = matrix_exp(zp);
  CHECK(operator_norm(exp_projection(p, z1) - viaexp) <=
        1e-12 * (1.0 + operator_norm(viaexp)));

  // the raw-block entry point computes the same thing
  CHECK(operator_norm(exp_projection_block(p.op(), z1) - exp_projection(p, z1)) ==
        0.0);
}

TEST_CASE("projection-field gradient vanishes for constant fields") {
  GridSpec g({8, 8}, 1.0 / 8);
  const ProjectionField p = presets::constant_field(g, 3, 2);
  for (const OperatorField& dk : gradient(p)) CHECK(dk.sup_norm() == 0.0);
  CHECK(diagonal_block_residual(p) == 0.0);
}

TEST_CASE("gradient of the rotating field tracks the analytic derivative") {
  auto analytic_error = [](int n) {
    GridSpec g({n}, 1.0 / n);
    const ProjectionField p = presets::rotating_field(g, 2);
    const std::vector<OperatorField> grad = gradient(p);
    REQUIRE(grad.size() == 1);
    double worst = 0.0;
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const double theta = 2.0 * kPi * static_cast<double>(c) / n;
      FiberOperator want(2);
      want(0, 0) = -std::sin(2.0 * theta);
      want(0, 1) = std::cos(2.0 * theta);
      want(1, 0) = std::cos(2.0 * theta);
      want(1, 1) = std::sin(2.0 * theta);
      want *= 2.0 * kPi;
      worst = std::max(worst, operator_norm(grad[0].get(c) - want));
    }
    return worst;
  };

  const double e128 = analytic_error(128);
  const double e256 = analytic_error(256);
  // forward differences: error <= h/2 * sup|P''| = h/2 * 8 pi^2 < 40 h
  CHECK(e128 <= 40.0 / 128);
  CHECK(e256 <= 40.0 / 256);
  // and first-order convergence
  CHECK(e256 / e128 > 0.4);
  CHECK(e256 / e128 < 0.62);
}

TEST_CASE("complement field has the opposite gradient") {
  GridSpec g({32}, 1.0 / 32);
  const ProjectionField p = presets::rotating_field(g, 2);
  const ProjectionField q = ProjectionField::generate(g, 2, [&](std::size_t c) {
    FiberOperator comp = FiberOperator::identity(2);
    comp -= p.get(c);
    return comp;
  });
  const std::vector<OperatorField> dp = gradient(p);
  const std::vector<OperatorField> dq = gradient(q);
  double worst = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c)
    worst = std::max(worst, operator_norm(dp[0].get(c) + dq[0].get(c)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("off-diagonal decomposition is complete and its remainder is O(h)") {
  auto residual_at = [](int n) {
    GridSpec g({n}, 1.0 / n);
    return diagonal_block_residual(presets::rotating_field(g, 2));
  };

  GridSpec g({48}, 1.0 / 48);
  const ProjectionField p = presets::rotating_field(g, 2);
  const std::vector<OperatorField> dp = gradient(p);
  const GradSplit split = grad_offdiagonal_decompose(p);

  // P (D P) Pperp + Pperp (D P) P + both diagonal corners rebuild D P
  double worst = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const FiberOperator px = p.get(c);
    FiberOperator perp = FiberOperator::identity(2);
    perp -= px;
    const FiberOperator m = dp[0].get(c);
    const FiberOperator rebuilt = split.kernel_to_range[0].get(c) +
                                  split.range_to_kernel[0].get(c) +
                                  px * m * px + perp * m * perp;
    worst = std::max(worst, operator_norm(rebuilt - m));
  }
  CHECK(worst <= 1e-11);

  // the two named parts live where their names say
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const FiberOperator px = p.get(c);
    const FiberOperator k2r = split.kernel_to_range[0].get(c);
    // P * k2r = k2r and k2r * P = 0
    CHECK(operator_norm(px * k2r - k2r) <= 1e-12);
    CHECK(operator_norm(k2r * px) <= 1e-12);
    const FiberOperator r2k = split.range_to_kernel[0].get(c);
    CHECK(operator_norm(px * r2k) <= 1e-12);
    CHECK(operator_norm(r2k * px - r2k) <= 1e-12);
  }

  // diagonal remainder shrinks linearly with the spacing
  const double r64 = residual_at(64), r128 = residual_at(128);
  CHECK(r128 / r64 > 0.4);
  CHECK(r128 / r64 < 0.62);

  // per-axis/per-cell table is consistent with the max
  const std::vector<std::vector<double>> table = diagonal_block_residuals(p);
  double table_max = 0.0;
  for (const std::vector<double>& axis : table)
    for (double v : axis) table_max = std::max(table_max, v);
  CHECK(table_max == doctest::Approx(diagonal_block_residual(p)).epsilon(1e-15));
}

TEST_CASE("twist at z = 0 returns the plain gradient") {
  GridSpec g({16, 4}, 1.0 / 16);
  const ProjectionField p = presets::rotating_field(g, 3);
  const std::vector<OperatorField> dp = gradient(p);
  const std::vector<OperatorField> tw = exp_grad_twist(p, 0.0);
  REQUIRE(tw.size() == dp.size());
  for (std::size_t k = 0; k < tw.size(); ++k)
    CHECK(sup_distance(tw[k], dp[k]) == 0.0);
}

TEST_CASE("twist is exact on the off-diagonal part of the gradient") {
  GridSpec g({24}, 1.0 / 24);
  const ProjectionField p = presets::rotating_field(g, 2);
  const GradSplit split = grad_offdiagonal_decompose(p);
  const cplx z(0.4, 1.3);

  double worst = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    // e^{zP} (P M Pperp + Pperp M P) = e^z P M Pperp + Pperp M P
    const FiberOperator offdiag =
        split.kernel_to_range[0].get(c) + split.range_to_kernel[0].get(c);
    const FiberOperator lhs = exp_projection_block(p.get(c), z) * offdiag;
    FiberOperator rhs = split.kernel_to_range[0].get(c);
    rhs *= std::exp(z);
    rhs += split.range_to_kernel[0].get(c);
    worst = std::max(worst, operator_norm(lhs - rhs));
  }
  CHECK(worst <= 1e-13);

  // full twist differs from the off-diagonal model only by the diagonal
  // remainder, amplified at most by |e^z| (or 1 when |e^z| < 1)
  const std::vector<OperatorField> tw = exp_grad_twist(p, z);
  const double amp = std::max(std::abs(std::exp(z)), 1.0);
  const double diag = diagonal_block_residual(p);
  double gap = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    FiberOperator model = split.kernel_to_range[0].get(c);
    model *= std::exp(z);
    model += split.range_to_kernel[0].get(c);
    gap = std::max(gap, operator_norm(tw[0].get(c) - model));
  }
  CHECK(gap <= amp * diag + 1e-12);
}

TEST_CASE("lattice-ideal test separates coordinate projections from rotated ones") {
  // 0/1 diagonal: ideal by both routes
  FiberOperator diag(3);
  diag(0, 0) = 1.0;
  diag(2, 2) = 1.0;
  const IdealProjectionVerdict yes = is_ideal_projection(Projection(diag), 64, 5);
  CHECK(yes.ideal);
  CHECK(yes.worst_residual <= 1e-12);
  CHECK(yes.structural_residual <= 1e-12);

  // rank-1 projection tilted into both coordinates: rejected by both routes
  FiberOperator tilt(2);
  tilt(0, 0) = 0.5;
  tilt(0, 1) = 0.5;
  tilt(1, 0) = 0.5;
  tilt(1, 1) = 0.5;
  const IdealProjectionVerdict no = is_ideal_projection(Projection(tilt), 64, 6);
  CHECK(!no.ideal);
  CHECK(no.worst_residual > 1e-3);
  CHECK(no.structural_residual > 1e-3);

  // trivial corners are ideals
  CHECK(is_ideal_projection(Projection(FiberOperator::identity(4)), 16, 7).ideal);
  CHECK(is_ideal_projection(Projection(FiberOperator(4)), 16, 8).ideal);

  CHECK_THROWS_WITH_AS(
      (void)is_ideal_projection(Projection(FiberOperator::identity(2)), 0, 9),
      "ideal test: samples must be >= 1", std::invalid_argument);

  // randomized agreement sweep between the sampled and structural routes;
  // construction guarantees a logic_error if they ever split
  Rng seeds(1002);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(seeds.below(4));
    Projection p = [&] {
      if (trial % 3 == 0) {
        // plant a coordinate ideal
        FiberOperator m(d);
        for (int i = 0; i < d; ++i)
          if (seeds.below(2) == 0) m(i, i) = 1.0;
        return Projection(m);
      }
      const int rank = 1 + static_cast<int>(seeds.below(static_cast<std::uint64_t>(d)));
      return presets::random_projection(d, rank, seeds.next_u64());
    }();
    CHECK_NOTHROW((void)is_ideal_projection(p, 32, 1100 + trial));
  }
}
