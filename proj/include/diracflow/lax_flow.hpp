#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "diracflow/operators.hpp"

namespace diracflow {

enum class FlowMethod { rk4_blocks, rk4_full };
enum class Termination { completed, converged, drift_abort };

struct FlowConfig {
  double beta = 0.0;
  double t_end = 10.0;
  /// Fixed step; 0 selects min(0.01, 0.1 / (1 + rho(L))) from the initial
  /// Laplacian spectral radius rho.
  double dt = 0.0;
  /// Requested snapshot times in [0, t_end]; snapped to the step grid.
  /// t = 0 is always recorded, and the run always ends with two consecutive
  /// steps so tail diagnostics can compare the last pair.
  std::vector<double> snapshot_times;
  double drift_tol = 1e-7;
  /// Early stop once tr(M) < convergence_rel * tr(L(0)).
  double convergence_rel = 1e-6;
  FlowMethod method = FlowMethod::rk4_blocks;
};

struct FlowDiagnostics {
  double tr_m = 0.0;
  double tr_b2 = 0.0;
  double d_dt_tr_b2 = 0.0;     // analytic 2 tr(b b'), not a finite difference
  double spectral_drift = 0.0; // max |sorted eig D(t) - sorted eig D(0)|
  double structure_residual = 0.0;  // content outside degree shifts {-1,0,+1}
  Complex str_u{0.0, 0.0};
};

struct FlowState {
  double t = 0.0;
  DiracDecomposition dec;
  Matrix propagator;  // U(t), U' = B U, U(0) = 1
  FlowDiagnostics diag;
};

struct FlowTrajectory {
  FlowConfig config;
  Grading grading;
  double dt = 0.0;            // the step actually used
  int time_sign = +1;         // -1 when integrating toward negative times
  Matrix laplacian0;
  RealVector spectrum0;       // sorted eigenvalues of D(0)
  double tr_l0 = 0.0;
  std::vector<FlowState> snapshots;
  Termination termination = Termination::completed;
  double final_time = 0.0;

  /// Snapshot whose time matches t within half a step. Throws when absent.
  const FlowState& at_time(double t) const;
  const FlowState& back() const { return snapshots.back(); }
};

struct BlockRhs {
  GradedMatrix d_dot;      // (1 - i beta)(d b - b d), degree +1
  GradedMatrix b_dot;      // 2 (d d^* - d^* d), degree 0
  GradedMatrix generator;  // B = d - d^* + i beta b
};

/// Degree-resolved right hand side of D' = [B, D]. The degree -1 content of
/// the commutator is the adjoint of d_dot; everything else vanishes.
BlockRhs rhs(const DiracDecomposition& dec);

/// Fixed-step RK4 on (d, b, U) from an undeformed Dirac operator (b = 0).
/// Throws std::invalid_argument when D0 carries a nonzero diagonal part or
/// off-structure content.
FlowTrajectory run_flow(const GradedMatrix& D0, FlowConfig cfg);

/// Forward run plus a run with negated right hand side; the backward
/// trajectory's snapshot at clock s represents the state at time -s.
std::pair<FlowTrajectory, FlowTrajectory> run_bidirectional(
    const GradedMatrix& D0, FlowConfig cfg);

struct AsymptoticsSummary {
  double b_sq_vs_l;                    // ||b(T)^2 - L(0)||_max
  double d_norm;                       // ||d(T)||_max
  double c_norm;                       // ||C(T)||_max
  std::optional<double> u_cauchy_tail; // ||U(T) - U(T-dt)||_max, beta = 0 only
};

/// Requires termination == converged; throws std::runtime_error otherwise.
AsymptoticsSummary asymptotics(const FlowTrajectory& traj);

struct InflationPoint {
  double t;
  double tr_m;
  double d_dt_tr_m;  // = -d/dt tr(b^2)
};

/// The tr(M) series with its analytic derivative; needs >= 3 snapshots.
std::vector<InflationPoint> inflation_profile(const FlowTrajectory& traj);

}  // namespace diracflow
