#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gflab/evolution.hpp"
#include "gflab/presets.hpp"
#include "gflab/rng.hpp"

using namespace gflab;

namespace {

constexpr double kPi = std::numbers::pi;

double distance(const Field& a, const Field& b) {
  Field d = a;
  d -= b;
  return d.norm();
}

std::vector<cplx> component_sums(const Field& f) {
  std::vector<cplx> sums(f.fiber_dim(), 0.0);
  for (std::size_t c = 0; c < f.grid().cells(); ++c)
    for (int i = 0; i < f.fiber_dim(); ++i) sums[i] += f.fiber(c)[i];
  return sums;
}

}  // namespace

TEST_CASE("laplacian eigenvalues match the stencil on every mode") {
  for (const std::vector<int>& sizes :
       {std::vector<int>{6}, std::vector<int>{4, 5}, std::vector<int>{3, 4, 2}}) {
    GridSpec g(sizes, 0.2);
    std::vector<int> mode(sizes.size(), 0);
    // walk the whole mode lattice
    std::size_t total = 1;
    for (int n : sizes) total *= static_cast<std::size_t>(n);
    for (std::size_t m = 0; m < total; ++m) {
      std::size_t rest = m;
      for (int k = static_cast<int>(sizes.size()) - 1; k >= 0; --k) {
        mode[k] = static_cast<int>(rest % sizes[k]);
        rest /= static_cast<std::size_t>(sizes[k]);
      }
      const double lambda = laplacian_eigenvalue(g, mode);
      double want = 0.0;
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        const double s = std::sin(kPi * mode[k] / sizes[k]);
        want += -4.0 / (g.spacing() * g.spacing()) * s * s;
      }
      CHECK(lambda == doctest::Approx(want).epsilon(1e-13));
      CHECK(lambda <= 0.0);

      // the plane wave of this mode is an exact eigenvector of the stencil
      const Field wave = presets::plane_wave(g, 1, mode, 0);
      const Field lap = laplacian(wave);
      Field scaled = cplx(lambda, 0.0) * wave;
      CHECK(distance(lap, scaled) <= 1e-9 * (1.0 + std::abs(lambda)));
    }
  }
}

TEST_CASE("heat flow damps plane waves by their eigenvalue") {
  GridSpec g({16, 16}, 1.0 / 16);
  const std::array<int, 2> mode = {2, 7};
  const Field wave = presets::plane_wave(g, 2, mode, 0);
  const double lambda = laplacian_eigenvalue(g, mode);
  for (double t : {0.001, 0.01}) {
    Field want = cplx(std::exp(t * lambda), 0.0) * wave;
    CHECK(distance(evolve_heat(wave, t), want) <= 1e-12);
  }
  // t = 0 is the literal identity
  CHECK(distance(evolve_heat(wave, 0.0), wave) == 0.0);

  CHECK_THROWS_WITH_AS(
      (void)evolve_heat(wave, -0.1),
      "heat evolution: t must be >= 0 (the semigroup is not reversible)",
      std::invalid_argument);
}

TEST_CASE("schrodinger flow rotates plane waves and reverses exactly") {
  GridSpec g({12}, 1.0 / 12);
  const std::array<int, 1> mode = {5};
  const Field wave = presets::plane_wave(g, 3, mode, 2);
  const double lambda = laplacian_eigenvalue(g, mode);
  const double t = 0.37;
  Field want = cplx(std::polar(1.0, t * lambda)) * wave;
  CHECK(distance(evolve_schrodinger(wave, t), want) <= 1e-12);
  // sign = -1 conjugates the phase
  Field wantm = cplx(std::polar(1.0, -t * lambda)) * wave;
  CHECK(distance(evolve_schrodinger(wave, t, -1), wantm) <= 1e-12);

  CHECK_THROWS_WITH_AS((void)evolve_schrodinger(wave, 0.1, 2),
                       "schrodinger evolution: sign must be +1 or -1",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      (void)evolve_schrodinger(wave, std::numeric_limits<double>::infinity()),
      "schrodinger evolution: t not finite", std::invalid_argument);
}

TEST_CASE("random-field sweep: contraction, unitarity, semigroup, mean") {
  Rng shapes(2001);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(shapes.below(2));
    std::vector<int> sizes(n);
    for (int& s : sizes) s = 4 + static_cast<int>(shapes.below(29));  // 4..32
    const int d = 1 + static_cast<int>(shapes.below(4));
    GridSpec g(sizes, 1.0 / sizes[0]);
    const Field f = presets::random_field(g, d, 3000 + trial);

    // heat: contraction and component-mean preservation
    const Field warm = evolve_heat(f, 0.02);
    CHECK(warm.norm() <= f.norm() * (1.0 + 1e-12));
    const std::vector<cplx> before = component_sums(f);
    const std::vector<cplx> after = component_sums(warm);
    for (int i = 0; i < d; ++i)
      CHECK(std::abs(before[i] - after[i]) <= 1e-11 * (1.0 + std::abs(before[i])));

    // heat: semigroup property
    CHECK(distance(evolve_heat(f, 0.03), evolve_heat(evolve_heat(f, 0.01), 0.02)) <=
          1e-12 * f.norm());

    // schrodinger: isometry and exact reversal
    const Field spun = evolve_schrodinger(f, 0.7);
    CHECK(std::abs(spun.norm() - f.norm()) <= 1e-12 * f.norm());
    CHECK(distance(evolve_schrodinger(spun, 0.7, -1), f) <= 1e-12 * f.norm());
  }
}

TEST_CASE("both flows commute with constant projection fields") {
  GridSpec g({8, 8}, 1.0 / 8);
  const int d = 3;
  const ProjectionField p =
      ProjectionField::constant(g, presets::random_projection(d, 2, 404));
  for (int trial = 0; trial < 5; ++trial) {
    const Field f = presets::random_field(g, d, 500 + trial);
    const Field a = apply_projection_field(p, evolve_heat(f, 0.05));
    const Field b = evolve_heat(apply_projection_field(p, f), 0.05);
    CHECK(distance(a, b) <= 1e-12 * f.norm());
    const Field c = apply_projection_field(p, evolve_schrodinger(f, 0.4));
    const Field e = evolve_schrodinger(apply_projection_field(p, f), 0.4);
    CHECK(distance(c, e) <= 1e-12 * f.norm());
  }
}

TEST_CASE("projection fields act cellwise and idempotently") {
  GridSpec g({6, 6}, 1.0 / 6);
  const ProjectionField p = presets::rotating_field(g, 2);
  const Field f = presets::random_field(g, 2, 640);
  const Field pf = apply_projection_field(p, f);
  double worst = 0.0;
  for (std::size_t c = 0; c < g.cells(); ++c) {
    const FiberVector want = p.get(c).apply(f.fiber_vector(c));
    for (int i = 0; i < 2; ++i)
      worst = std::max(worst, std::abs(want[i] - pf.fiber(c)[i]));
  }
  CHECK(worst <= 1e-13);
  CHECK(distance(apply_projection_field(p, pf), pf) <= 1e-13 * f.norm());

  GridSpec other({5}, 0.2);
  CHECK_THROWS_WITH_AS(
      (void)apply_projection_field(p, presets::random_field(other, 2, 1)),
      "grid mismatch", std::invalid_argument);
}

TEST_CASE("pointwise unitary group: special angles, isometry, group law") {
  GridSpec g({10}, 0.1);
  const ProjectionField p = presets::rotating_field(g, 2);
  const Field f = presets::random_field(g, 2, 700);

  // s = 0 is an exact no-op
  CHECK(distance(apply_exp_group(p, 0.0, f), f) == 0.0);

  // s = pi reflects the range: f - 2 P f
  Field reflect = f;
  Field pf = apply_projection_field(p, f);
  pf *= 2.0;
  reflect -= pf;
  CHECK(distance(apply_exp_group(p, kPi, f), reflect) <= 1e-12 * f.norm());

  // isometry at assorted angles and 2pi-periodicity
  for (double s : {0.3, 1.1, 2.9, 5.0}) {
    CHECK(std::abs(apply_exp_group(p, s, f).norm() - f.norm()) <=
          1e-12 * f.norm());
  }
  CHECK(distance(apply_exp_group(p, 2.0 * kPi, f), f) <= 1e-12 * f.norm());

  // group law in s
  const Field one = apply_exp_group(p, 0.8, apply_exp_group(p, 0.5, f));
  const Field both = apply_exp_group(p, 1.3, f);
  CHECK(distance(one, both) <= 1e-12 * f.norm());
}

TEST_CASE("leakage detects heat-invariant ranges and rejects rotated ones") {
  const std::vector<double> times = {0.0, 0.01, 0.1};

  // constant field: the range is invariant, so nothing leaks at any time
  {
    GridSpec g({16}, 1.0 / 16);
    const ProjectionField p = presets::constant_field(g, 2, 1);
    const Field f = presets::random_field(g, 2, 801);
    const std::vector<double> leak = leakage(p, f, times);
    REQUIRE(leak.size() == 3);
    CHECK(leak[0] == 0.0);  // t = 0 short-circuits and the blocks are exact 0/1
    for (double v : leak) {
      CHECK(v <= 1e-10);
      CHECK(v >= 0.0);
    }
  }

  // rotating field: mass escapes the range quickly
  {
    GridSpec g({64}, 1.0 / 64);
    const ProjectionField p = presets::rotating_field(g, 2);
    const Field f = presets::random_field(g, 2, 802);
    const std::vector<double> leak = leakage(p, f, times);
    CHECK(leak[0] <= 1e-13);
    CHECK(leak[2] > 1e-3);
    for (double v : leak) CHECK(v <= 1.0 + 1e-12);
  }

  // a state with no part in the range is rejected up front
  {
    GridSpec g({8}, 1.0 / 8);
    const ProjectionField p = presets::constant_field(g, 2, 1);
    Field off(g, 2);
    for (std::size_t c = 0; c < g.cells(); ++c) off.fiber(c)[1] = 1.0;
    CHECK_THROWS_WITH_AS((void)leakage(p, off, times),
                         "initial state annihilated by projection",
                         std::invalid_argument);
  }
}

TEST_CASE("heat kernel stays positive and spreads everywhere instantly") {
  // one component: evolved indicators have strictly positive values
  {
    GridSpec g({12}, 1.0 / 12);
    const Field spike = presets::indicator(g, 1, 0, 0);
    const Field warm = evolve_heat(spike, 0.01);
    for (std::size_t c = 0; c < g.cells(); ++c) {
      CHECK(warm.fiber(c)[0].real() > 0.0);
      CHECK(std::abs(warm.fiber(c)[0].imag()) <= 1e-14);
    }
  }

  // two axes: every cell carries mass after arbitrarily short times
  {
    GridSpec g({8, 8}, 1.0 / 8);
    const Field spike = presets::indicator(g, 2, g.index(std::array<int, 2>{2, 3}), 1);
    const Field warm = evolve_heat(spike, 0.01);
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < g.cells(); ++c) {
      double cell = 0.0;
      for (int i = 0; i < 2; ++i) cell += std::norm(warm.fiber(c)[i]);
      least = std::min(least, std::sqrt(cell));
    }
    CHECK(least > 1e-13 * spike.norm());
  }
}
