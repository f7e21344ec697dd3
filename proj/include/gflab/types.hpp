#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace gflab {

using cplx = std::complex<double>;

// Tolerance bundle shared by the checks. All bounds are on operator or
// Euclidean norms.
//   algebraic     exact operator identities (idempotence, group law, ...)
//   ideal         0/1 structure tests and locality block thresholds
//   verdict_pass  residual below which a criterion counts as satisfied
//   verdict_fail  residual above which it counts as violated
//   locally_const adjacency threshold when partitioning into constant patches
//   support_floor relative mass floor for support / positivity checks
struct Tolerances {
  double algebraic = 1e-12;
  double ideal = 1e-10;
  double verdict_pass = 1e-8;
  double verdict_fail = 1e-3;
  double locally_const = 1e-8;
  double support_floor = 1e-13;
};

}  // namespace gflab
