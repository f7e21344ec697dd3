#include "gflab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "gflab/evolution.hpp"
#include "gflab/kernels.hpp"
#include "gflab/parallel.hpp"
#include "gflab/rng.hpp"

namespace gflab {

double GaugeField::sup_norm() const {
  double worst = 0.0;
  for (const OperatorField& c : components) worst = std::max(worst, c.sup_norm());
  return worst;
}

GaugeField gauge_field(const ProjectionField& p, double s) {
  const GridSpec& g = p.grid();
  std::vector<OperatorField> grads = gradient(p);
  const cplx w = std::polar(1.0, s) - 1.0;

  GaugeField out{g, s, {}};
  out.components.reserve(g.dim());
  for (int k = 0; k < g.dim(); ++k) {
    OperatorField a(g, p.fiber_dim());
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const FiberOperator twist =
          exp_projection_block(p.get(c), cplx(0.0, -s)) * grads[k].get(c);
      a.set(c, w * twist);
    }
    out.components.push_back(std::move(a));
  }
  return out;
}

std::vector<OperatorField> gauge_field_split(const ProjectionField& p, double s) {
  GradSplit sp = grad_offdiagonal_decompose(p);
  const cplx a = 1.0 - std::polar(1.0, -s);
  const cplx b = std::polar(1.0, s) - 1.0;
  const std::size_t len = p.grid().cells() *
                          static_cast<std::size_t>(p.fiber_dim()) * p.fiber_dim();
  std::vector<OperatorField> out;
  out.reserve(p.grid().dim());
  for (int k = 0; k < p.grid().dim(); ++k) {
    OperatorField f(p.grid(), p.fiber_dim());
    kernels::active().axpy(a, sp.kernel_to_range[k].data(), f.data(), len);
    kernels::active().axpy(b, sp.range_to_kernel[k].data(), f.data(), len);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

void require_same_layout(const ProjectionField& p, const Field& f) {
  if (!(p.grid() == f.grid()) || p.fiber_dim() != f.fiber_dim())
    throw std::invalid_argument("grid mismatch");
}

double field_sum_sq(const Field& f) {
  const double* raw = reinterpret_cast<const double*>(f.data());
  return kernels::active().sum_sq(raw, 2 * f.size());
}

}  // namespace

double form_a_s(const ProjectionField& p, double s, const Field& f) {
  require_same_layout(p, f);
  const GaugeField gauge = gauge_field(p, s);
  const std::vector<Field> grads = gradient(f);
  double acc = 0.0;
  for (int k = 0; k < f.grid().dim(); ++k) {
    Field u = apply_operator_field(gauge.components[k], f);
    u += grads[k];
    acc += field_sum_sq(u);
  }
  return f.grid().cell_volume() * acc;
}

double form_a_s_exact(const ProjectionField& p, double s, const Field& f) {
  require_same_layout(p, f);
  const GridSpec& g = f.grid();
  const cplx w = std::polar(1.0, s) - 1.0;
  const std::vector<Field> grads_f = gradient(f);
  const std::vector<OperatorField> grads_p = gradient(p);

  double acc = 0.0;
  for (int k = 0; k < g.dim(); ++k) {
    OperatorField eshift(g, p.fiber_dim());
    for (std::size_t c = 0; c < g.cells(); ++c) {
      const std::size_t sc = g.shift(c, k, +1);
      eshift.set(c, exp_projection_block(p.get(sc), cplx(0.0, s)));
    }
    Field u = apply_operator_field(eshift, grads_f[k]);
    const Field v = apply_operator_field(grads_p[k], f);
    kernels::active().axpy(w, v.data(), u.data(), u.size());
    acc += field_sum_sq(u);
  }
  return g.cell_volume() * acc;
}

double interaction_lagrangian(const ProjectionField& p, double s,
                              const Trajectory& traj) {
  if (traj.times.size() < 2) throw std::invalid_argument("trajectory: need >= 2 samples");
  if (traj.times.size() != traj.states.size())
    throw std::invalid_argument("trajectory: times/states length mismatch");
  for (const Field& st : traj.states) require_same_layout(p, st);

  const GaugeField gauge = gauge_field(p, s);
  const double vol = p.grid().cell_volume();
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < traj.times.size(); ++j) {
    const double dt = traj.times[j + 1] - traj.times[j];
    if (!(dt > 0.0)) throw std::invalid_argument("trajectory: times must increase");
    double term = 0.0;
    for (int k = 0; k < p.grid().dim(); ++k)
      term += field_sum_sq(apply_operator_field(gauge.components[k], traj.states[j]));
    total += dt * vol * term;
  }
  return total;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Symmetric: return "symmetric";
    case Verdict::NotSymmetric: return "not symmetric";
    case Verdict::Inconclusive: return "inconclusive (refine h)";
  }
  return "?";
}

std::string to_string(ComponentLabel label) {
  switch (label) {
    case ComponentLabel::Zero: return "zero";
    case ComponentLabel::Identity: return "identity";
    case ComponentLabel::CoordinateIdeal: return "coordinate-ideal";
    case ComponentLabel::General: return "general";
  }
  return "?";
}

double SymmetryReport::max_residual() const {
  double worst = residual_b;
  for (const auto& [s, r] : residual_c) worst = std::max(worst, r);
  return std::max(worst, max_leakage);
}

namespace {

std::vector<Field> make_test_fields(const GridSpec& g, int d, int trials,
                                    std::uint64_t seed) {
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(2 * g.dim() * d) + trials);
  for (int k = 0; k < g.dim(); ++k) {
    for (int j = 0; j < d; ++j) {
      for (int sign : {+1, -1}) {
        Field psi(g, d);
        const int nk = g.sizes()[k];
        for (std::size_t c = 0; c < g.cells(); ++c) {
          const int xk = static_cast<int>((c / g.stride(k)) % static_cast<std::size_t>(nk));
          psi.fiber(c)[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * xk / nk);
        }
        out.push_back(std::move(psi));
      }
    }
  }
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    Field psi(g, d);
    for (std::size_t i = 0; i < psi.size(); ++i) psi.data()[i] = rng.gaussian_cplx();
    out.push_back(std::move(psi));
  }
  return out;
}

}  // namespace

SymmetryReport check_invariance_criterion(const ProjectionField& p,
                                          const InvarianceOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("invariance check: trials must be >= 1");
  const GridSpec& g = p.grid();
  const std::vector<Field> fields =
      make_test_fields(g, p.fiber_dim(), opts.trials, opts.seed);

  struct PerField {
    double b = 0.0;
    std::vector<double> c;
    std::vector<double> leak;
  };
  std::vector<PerField> results(fields.size());

  parallel_for(fields.size(), [&](std::size_t i) {
    const Field& psi = fields[i];
    const double a = form_a(psi);
    const double denom = 1.0 + a;
    const Field ppsi = apply_projection_field(p, psi);
    Field rest = psi;
    rest -= ppsi;

    PerField r;
    r.b = std::abs(form_a_sesq(ppsi, rest)) / denom;
    r.c.reserve(opts.s_samples.size());
    for (double s : opts.s_samples)
      r.c.push_back(std::abs(form_a(apply_exp_group(p, s, psi)) - a) / denom);
    if (ppsi.norm() > 1e-14 * (1.0 + psi.norm()))
      r.leak = leakage(p, psi, opts.leak_times);
    else
      r.leak.assign(opts.leak_times.size(), 0.0);
    results[i] = std::move(r);
  });

  SymmetryReport rep;
  rep.tol = opts.tol;
  for (const PerField& r : results) rep.residual_b = std::max(rep.residual_b, r.b);
  for (std::size_t si = 0; si < opts.s_samples.size(); ++si) {
    double worst = 0.0;
    for (const PerField& r : results) worst = std::max(worst, r.c[si]);
    rep.residual_c.emplace_back(opts.s_samples[si], worst);
  }
  for (std::size_t ti = 0; ti < opts.leak_times.size(); ++ti) {
    double worst = 0.0;
    for (const PerField& r : results) worst = std::max(worst, r.leak[ti]);
    rep.leakage_by_time.emplace_back(opts.leak_times[ti], worst);
    rep.max_leakage = std::max(rep.max_leakage, worst);
  }
  for (const OperatorField& dk : gradient(p))
    rep.grad_sup_norm.push_back(dk.sup_norm());

  const double worst = rep.max_residual();
  if (worst <= opts.tol.verdict_pass)
    rep.verdict = Verdict::Symmetric;
  else if (worst >= opts.tol.verdict_fail)
    rep.verdict = Verdict::NotSymmetric;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

GlobalSymmetryResult check_global_symmetry(const ProjectionField& p,
                                           const InvarianceOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("symmetry check: trials must be >= 1");
  const std::vector<Field> fields =
      make_test_fields(p.grid(), p.fiber_dim(), opts.trials, opts.seed);
  std::vector<double> worst(fields.size(), 0.0);
  parallel_for(fields.size(), [&](std::size_t i) {
    const Field& psi = fields[i];
    const double a = form_a(psi);
    for (double s : opts.s_samples) {
      const double r = std::abs(form_a(apply_exp_group(p, s, psi)) - a) / (1.0 + a);
      worst[i] = std::max(worst[i], r);
    }
  });
  double residual = 0.0;
  for (double w : worst) residual = std::max(residual, w);
  return {residual <= opts.tol.verdict_pass, residual};
}

LocalConstancyPartition detect_locally_constant(const ProjectionField& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("constancy detection: eps must be > 0");
  const GridSpec& g = p.grid();
  const std::size_t n = g.cells();

  // forward adjacent distances, [axis][cell]
  std::vector<std::vector<double>> dist(g.dim(), std::vector<double>(n, 0.0));
  parallel_for(n, [&](std::size_t c) {
    const FiberOperator pc = p.get(c);
    for (int k = 0; k < g.dim(); ++k)
      dist[k][c] = operator_norm(p.get(g.shift(c, k, +1)) - pc);
  });

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t c = 0; c < n; ++c)
    for (int k = 0; k < g.dim(); ++k)
      if (dist[k][c] <= eps) {
        const std::size_t a = find(c), b = find(g.shift(c, k, +1));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  LocalConstancyPartition out;
  out.component.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t root = find(c);
    if (id_of_root[root] < 0) {
      id_of_root[root] = out.component_count++;
      out.representative.push_back(p.get(c));
    }
    out.component[c] = id_of_root[root];
  }

  out.boundary_gap = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    for (int k = 0; k < g.dim(); ++k) {
      const std::size_t nb = g.shift(c, k, +1);
      if (nb == c) continue;
      if (out.component[c] == out.component[nb])
        out.within_residual = std::max(out.within_residual, dist[k][c]);
      else
        out.boundary_gap = std::min(out.boundary_gap, dist[k][c]);
    }
  }

  const Tolerances tol;
  const FiberOperator id = FiberOperator::identity(p.fiber_dim());
  for (int i = 0; i < out.component_count; ++i) {
    const FiberOperator& rep = out.representative[i];
    if (operator_norm(rep) <= tol.ideal) {
      out.label.push_back(ComponentLabel::Zero);
    } else if (operator_norm(rep - id) <= tol.ideal) {
      out.label.push_back(ComponentLabel::Identity);
    } else {
      const auto verdict = is_ideal_projection(
          Projection(rep), 64, Rng::derive(7, "constancy-labels") + i);
      out.label.push_back(verdict.ideal ? ComponentLabel::CoordinateIdeal
                                        : ComponentLabel::General);
    }
  }
  return out;
}

NecessaryConditionReport necessary_condition_experiment(
    const ProjectionField& p, const InvarianceOptions& opts) {
  NecessaryConditionReport rep;
  rep.gauge_sup_pi = gauge_field(p, std::numbers::pi).sup_norm();
  rep.symmetry = check_invariance_criterion(p, opts);
  const LocalConstancyPartition part =
      detect_locally_constant(p, opts.tol.locally_const);
  rep.component_count = part.component_count;
  rep.within_residual = part.within_residual;
  rep.gauge_vanishes = rep.gauge_sup_pi <= opts.tol.ideal;
  rep.single_component = part.component_count == 1;
  rep.constant_field =
      rep.single_component && part.within_residual <= opts.tol.locally_const;
  rep.consistent = rep.gauge_vanishes == rep.constant_field;
  return rep;
}

IrreducibilityReport irreducibility_scan(const GridSpec& grid, int fiber_dim,
                                         double t, std::uint64_t seed,
                                         const Tolerances& tol) {
  if (fiber_dim < 1) throw std::invalid_argument("scan: fiber dimension must be >= 1");
  if (fiber_dim > 8) throw std::invalid_argument("scan: fiber dimension above desk scale");
  if (!(t > 0.0)) throw std::invalid_argument("scan: time must be > 0");

  IrreducibilityReport rep;
  rep.fiber_dim = fiber_dim;
  rep.time = t;
  const double times[1] = {t};

  if (fiber_dim >= 2) {
    // probe fields: constant ones plus two Gaussian draws
    std::vector<Field> probes;
    Field ones(grid, fiber_dim);
    for (std::size_t i = 0; i < ones.size(); ++i) ones.data()[i] = 1.0;
    probes.push_back(std::move(ones));
    Rng rng(Rng::derive(seed, "ideal-probes"));
    for (int r = 0; r < 2; ++r) {
      Field f(grid, fiber_dim);
      for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] = rng.gaussian_cplx();
      probes.push_back(std::move(f));
    }

    const unsigned nmask = (1u << fiber_dim) - 1;
    std::vector<double> worst(nmask - 1, 0.0);
    parallel_for(nmask - 1, [&](std::size_t i) {
      const unsigned mask = static_cast<unsigned>(i) + 1;
      FiberOperator diag(fiber_dim);
      for (int j = 0; j < fiber_dim; ++j)
        if (mask & (1u << j)) diag(j, j) = 1.0;
      const ProjectionField ps = ProjectionField::constant(grid, Projection(diag));
      for (const Field& f : probes) {
        const std::vector<double> leak = leakage(ps, f, times);
        worst[i] = std::max(worst[i], leak[0]);
      }
    });

    bool any_invariant = false;
    for (unsigned mask = 1; mask < nmask; ++mask) {
      std::vector<int> subset;
      for (int j = 0; j < fiber_dim; ++j)
        if (mask & (1u << j)) subset.push_back(j + 1);
      const double leak = worst[mask - 1];
      rep.ideal_leakage.emplace_back(subset, leak);
      rep.max_ideal_leakage = std::max(rep.max_ideal_leakage, leak);
      if (leak <= tol.ideal && !any_invariant) {
        any_invariant = true;
        rep.witness = subset;
      }
    }
    rep.irreducible = !any_invariant;
    return rep;
  }

  // fiber_dim == 1: no coordinate ideals in the fiber; candidate invariant
  // subspaces are L^2 over cell subsets
  const std::size_t n = grid.cells();
  std::vector<std::vector<char>> subsets;
  if (n <= 12) {
    const std::size_t total = (std::size_t{1} << n) - 1;
    for (std::size_t mask = 1; mask < total; ++mask) {
      std::vector<char> s(n, 0);
      for (std::size_t c = 0; c < n; ++c) s[c] = (mask >> c) & 1;
      subsets.push_back(std::move(s));
    }
    rep.exhaustive = true;
  } else {
    Rng rng(Rng::derive(seed, "cell-subsets"));
    while (subsets.size() < 100) {
      std::vector<char> s(n, 0);
      std::size_t count = 0;
      for (std::size_t c = 0; c < n; ++c) {
        s[c] = static_cast<char>(rng.below(2));
        count += s[c];
      }
      if (count == 0 || count == n) continue;
      subsets.push_back(std::move(s));
    }
    rep.exhaustive = false;
  }
  rep.subsets_checked = subsets.size();

  std::vector<double> outside(subsets.size(), 0.0);
  parallel_for(subsets.size(), [&](std::size_t i) {
    Field f(grid, 1);
    for (std::size_t c = 0; c < n; ++c)
      if (subsets[i][c]) f.fiber(c)[0] = 1.0;
    const double total_mass = f.norm() * f.norm();
    const Field ev = evolve_heat(f, t);
    double mass_out = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      if (!subsets[i][c]) mass_out += std::norm(ev.fiber(c)[0]);
    outside[i] = grid.cell_volume() * mass_out / total_mass;
  });
  rep.min_outside_mass = std::numeric_limits<double>::infinity();
  for (double m : outside) rep.min_outside_mass = std::min(rep.min_outside_mass, m);
  rep.irreducible = rep.min_outside_mass > tol.support_floor;

  Field delta(grid, 1);
  delta.fiber(0)[0] = 1.0;
  const Field ev = evolve_heat(delta, t);
  rep.positivity_min = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    rep.positivity_min = std::min(rep.positivity_min, ev.fiber(c)[0].real());
    rep.positivity_max_imag =
        std::max(rep.positivity_max_imag, std::abs(ev.fiber(c)[0].imag()));
  }
  return rep;
}

}  // namespace gflab
