#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gflab/grid.hpp"
#include "gflab/projection_calculus.hpp"

namespace gflab {

// A_{s,k}(x) = (e^{is} - 1) e^{-is P_x} (D_k P)(x): the multiplier that turns
// the plain gradient into the covariant derivative of the twisted state.
struct GaugeField {
  GridSpec grid;
  double s;
  std::vector<OperatorField> components;  // per axis

  double sup_norm() const;
};

GaugeField gauge_field(const ProjectionField& p, double s);

// Equivalent split form (1-e^{-is}) P (D_kP) P_perp + (e^{is}-1) P_perp (D_kP) P.
// Differs from gauge_field by (e^{is}-1)[e^{-is} P(D_kP)P + P_perp(D_kP)P_perp],
// i.e. by at most |e^{is}-1| times the diagonal-block residual per cell.
std::vector<OperatorField> gauge_field_split(const ProjectionField& p, double s);

// a_s(f) = h^n sum_{x,k} | A_{s,k}(x) f(x) + (D_k f)(x) |^2
double form_a_s(const ProjectionField& p, double s, const Field& f);

// Exact discrete expansion of a(e^{isP}f): the product rule for forward
// differences puts the exponential at the shifted cell,
//   D_k(e^{isP}f)(x) = e^{isP_{x+he_k}} (D_kf)(x) + (e^{is}-1)(D_kP)(x) f(x),
// so this equals form_a(apply_exp_group(p,s,f)) to rounding.
double form_a_s_exact(const ProjectionField& p, double s, const Field& f);

// L_s(phi) = sum_j dt_j h^n sum_{x,k} |A_{s,k}(x) phi(t_j, x)|^2
double interaction_lagrangian(const ProjectionField& p, double s,
                              const Trajectory& traj);

enum class Verdict { Symmetric, NotSymmetric, Inconclusive };
std::string to_string(Verdict v);

struct SymmetryReport {
  double residual_b = 0.0;  // |a(P psi, psi - P psi)| / (1 + a(psi)), worst case
  std::vector<std::pair<double, double>> residual_c;  // (s, worst residual)
  std::vector<std::pair<double, double>> leakage_by_time;
  double max_leakage = 0.0;
  std::vector<double> grad_sup_norm;  // per axis sup_x ||(D_k P)(x)||
  Verdict verdict = Verdict::Inconclusive;
  Tolerances tol;

  double max_residual() const;
};

struct InvarianceOptions {
  int trials = 20;
  std::uint64_t seed = 42;
  std::vector<double> s_samples{std::numbers::pi / 4, std::numbers::pi / 2,
                                std::numbers::pi};
  std::vector<double> leak_times{0.01, 0.1, 1.0};
  Tolerances tol;
};

// Probes the heat-invariance of range(P) through its quadratic-form
// characterizations: residual_b for a(P psi, (Id-P) psi) = 0, residual_c(s)
// for a(e^{isP} psi) = a(psi), plus heat leakage over a time grid. Test
// ensemble: one forward and one backward unit Fourier mode per axis and
// fiber coordinate, plus `trials` seeded Gaussian fields.
SymmetryReport check_invariance_criterion(const ProjectionField& p,
                                          const InvarianceOptions& opts = {});

struct GlobalSymmetryResult {
  bool symmetric;
  double residual;
};

// max over s-samples and test fields of the form-invariance residual; the
// boolean applies tol.verdict_pass
GlobalSymmetryResult check_global_symmetry(const ProjectionField& p,
                                           const InvarianceOptions& opts = {});

enum class ComponentLabel { Zero, Identity, CoordinateIdeal, General };
std::string to_string(ComponentLabel label);

struct LocalConstancyPartition {
  std::vector<int> component;  // per cell, ids ordered by first appearance
  int component_count = 0;
  std::vector<FiberOperator> representative;  // first cell of each component
  std::vector<ComponentLabel> label;
  double within_residual = 0.0;  // max adjacent distance inside components
  double boundary_gap = 0.0;     // min adjacent distance across components (inf if none)
};

// Partitions the torus into connected patches whose adjacent projections
// differ by at most eps (operator norm), then classifies each patch
// representative as zero / identity / coordinate ideal / general.
LocalConstancyPartition detect_locally_constant(const ProjectionField& p,
                                                double eps = 1e-8);

// Pairs the three faces of the locally-constant necessary condition: the
// gauge field at s = pi, the invariance verdict, and the constancy
// partition. gauge_vanishes implies constant_field; the reverse needs the
// distances to be zero at working precision, so `consistent` compares the
// two booleans and is reported, not silently assumed.
struct NecessaryConditionReport {
  double gauge_sup_pi = 0.0;
  SymmetryReport symmetry;
  int component_count = 0;
  double within_residual = 0.0;
  bool gauge_vanishes = false;
  bool single_component = false;
  bool constant_field = false;
  bool consistent = false;
};

NecessaryConditionReport necessary_condition_experiment(
    const ProjectionField& p, const InvarianceOptions& opts = {});

struct IrreducibilityReport {
  int fiber_dim = 0;
  double time = 0.0;
  bool irreducible = false;
  // d >= 2: leakage of every constant coordinate-ideal projection field;
  // subsets use 1-based coordinate labels
  std::vector<std::pair<std::vector<int>, double>> ideal_leakage;
  std::vector<int> witness;  // first invariant subset when reducible
  double max_ideal_leakage = 0.0;
  // d == 1: evolved mass outside candidate invariant cell subsets
  std::size_t subsets_checked = 0;
  bool exhaustive = false;
  double min_outside_mass = 0.0;  // relative to total mass
  // d == 1: positivity of the evolved indicator of cell 0
  double positivity_min = 0.0;
  double positivity_max_imag = 0.0;
};

// d >= 2: every nonempty proper coordinate subset gives a constant ideal
// projection field; the heat flow leaves each invariant (leakage <= tol),
// so the system is reducible. d == 1: no cell subset is invariant, checked
// exhaustively for <= 12 cells, else on 100 seeded random subsets.
IrreducibilityReport irreducibility_scan(const GridSpec& grid, int fiber_dim,
                                         double t, std::uint64_t seed = 42,
                                         const Tolerances& tol = {});

}  // namespace gflab
