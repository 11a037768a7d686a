#pragma once

#include <vector>

#include "diracflow/graded_matrix.hpp"
#include "diracflow/lax_flow.hpp"

namespace diracflow {

struct BettiVector {
  std::vector<int> b;            // rank route: b_p = v_p - rk d_p - rk d_{p-1}
  std::vector<int> kernel_route; // dim ker L_p, must agree
  /// Set when a singular value (or Laplacian eigenvalue) sits within a factor
  /// 10 of its rank threshold, or when the two routes disagree.
  bool flagged = false;

  bool agrees() const { return b == kernel_route; }
};

/// Betti numbers of an exterior derivative via singular-value ranks and,
/// independently, Hodge kernels. Relative rank threshold 1e-10 * sigma_max *
/// max(block dimensions). Throws std::invalid_argument when ||d^2||_max
/// exceeds d_sq_tol.
BettiVector betti_numbers(const GradedMatrix& d, double d_sq_tol = 1e-8);

/// Betti vector of d(t) at a snapshot time; must equal the t = 0 value.
BettiVector deformed_betti(const FlowTrajectory& traj, double t);

struct ComplexSplit {
  GradedMatrix del;     // entrywise real part of d
  GradedMatrix delbar;  // i * entrywise imaginary part, so del + delbar = d
  double del_sq_residual = 0.0;
  double delbar_sq_residual = 0.0;
  double anticommutator_residual = 0.0;  // ||del delbar + delbar del||_max
};

ComplexSplit complex_split(const GradedMatrix& d);

struct KahlerResult {
  /// ||(del + del^*) - (delbar + delbar^*)||_max; zero for a Kahler structure.
  double gap;
  /// ||(d + d^*)^2 - (del + del^*)^2 - (delbar + delbar^*)^2||_max.
  double laplacian_split_residual;
};

KahlerResult kahler_test(const ComplexSplit& split);

}  // namespace diracflow
